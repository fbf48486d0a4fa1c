use favard_core::digits::{DigitSystem, Limits};
use favard_core::projection::{
    counting_function, projected_points, projection_measure, projection_parameter_length_f64,
    Window,
};
use favard_core::rational::{self, Rational};
use favard_core::tiling::{complement_search, tiling_check};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn digit_system() -> impl Strategy<Value = DigitSystem> {
    prop_oneof![
        Just((4u64, 2usize, 2usize)),
        Just((6, 2, 3)),
        Just((6, 3, 2)),
        Just((8, 2, 4)),
        Just((9, 3, 3)),
    ]
    .prop_flat_map(|(k, na, nb)| {
        let all: Vec<u64> = (0..k).collect();
        (Just(k), subsequence(all.clone(), na), subsequence(all, nb))
    })
    .prop_map(|(k, a, b)| DigitSystem::new(k, &a, &b).unwrap())
}

fn coprime_slope() -> impl Strategy<Value = (u64, u64)> {
    (0u64..6, 1u64..6).prop_map(|(q, r)| {
        let g = num_integer::gcd(q, r);
        (q / g, r / g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn swap_symmetry((ds, (q, r), n) in (digit_system(), coprime_slope(), 1u32..4)) {
        prop_assume!(q > 0);
        let l = Limits::default();
        let m = projection_measure(&ds, n, q, r, &l).unwrap();
        let s = projection_measure(&ds.swapped(), n, r, q, &l).unwrap();
        prop_assert_eq!(m.squared(), s.squared());
    }

    #[test]
    fn measure_nonincreasing_in_n((ds, (q, r)) in (digit_system(), coprime_slope())) {
        let l = Limits::default();
        let mut previous: Option<Rational> = None;
        for n in 0..4 {
            let m = projection_measure(&ds, n, q, r, &l).unwrap().rational_part;
            if let Some(p) = &previous {
                prop_assert!(&m <= p);
            }
            previous = Some(m);
        }
    }

    #[test]
    fn counting_function_mass((ds, (q, r), n) in (digit_system(), coprime_slope(), 0u32..4)) {
        let l = Limits::default();
        let unit = counting_function(&ds, n, q, r, Window::Unit, &l).unwrap();
        prop_assert_eq!(unit.integral(), rational::one());
        let shadow = counting_function(&ds, n, q, r, Window::Shadow, &l).unwrap();
        prop_assert_eq!(shadow.integral(), rational::one() + rational::ratio(q as i128, r as i128));
    }

    #[test]
    fn counting_function_self_similarity(
        (ds, (q, r), m, split, x_num) in (digit_system(), coprime_slope(), 2u32..4, 1u32..3, 0i64..10_000)
    ) {
        prop_assume!(split < m);
        let l = Limits::default();
        let fine = counting_function(&ds, m, q, r, Window::Unit, &l).unwrap();
        let tail = counting_function(&ds, m - split, q, r, Window::Unit, &l).unwrap();
        let coarse = projected_points(&ds, split, q, r, &l).unwrap();
        let span = rational::ratio(2 * (q + r) as i128, r as i128);
        let x = Rational::new(BigInt::from(x_num), BigInt::from(10_000)) * &span;
        let k_split = Rational::from_integer(BigInt::from(ds.base()).pow(split));
        let denom = Rational::from_integer(BigInt::from(coarse.denominator));
        let mut sum = 0u64;
        for &(value, mult) in &coarse.atoms {
            let c = Rational::from_integer(BigInt::from(value)) / &denom;
            sum += mult * tail.value_at(&((&x - c) * &k_split));
        }
        prop_assert_eq!(fine.value_at(&x), sum);
    }

    #[test]
    fn float_sweep_matches_exact((ds, (q, r), n) in (digit_system(), coprime_slope(), 1u32..4)) {
        let l = Limits::default();
        let exact = rational::to_f64(&projection_measure(&ds, n, q, r, &l).unwrap().rational_part);
        let float = projection_parameter_length_f64(&ds, n, q as f64 / r as f64, 1e-12, &l).unwrap();
        prop_assert!((exact - float).abs() <= 1e-9, "{} vs {}", exact, float);
    }

    #[test]
    fn tiling_shift_and_symmetry(
        d in subsequence((0i64..12).collect::<Vec<_>>(), 1..=4),
        c_seed in any::<u64>(),
        shift in -50i64..50,
    ) {
        let size = 12 / d.len();
        let mut c = Vec::with_capacity(size);
        let mut seed = c_seed;
        let mut pool: Vec<i64> = (0..12).collect();
        for _ in 0..size {
            let i = (seed % pool.len() as u64) as usize;
            seed = seed.rotate_left(7) ^ 0x9e37_79b9_7f4a_7c15;
            c.push(pool.remove(i));
        }
        let base = tiling_check(&d, &c, 12).unwrap();
        let shifted: Vec<i64> = d.iter().map(|x| x + shift).collect();
        prop_assert_eq!(tiling_check(&shifted, &c, 12).unwrap(), base);
        prop_assert_eq!(tiling_check(&c, &d, 12).unwrap(), base);
    }

    #[test]
    fn complement_search_reverifies(d in subsequence((0i64..10).collect::<Vec<_>>(), 1..=4)) {
        if let Some(cert) = complement_search(&d, 48) {
            prop_assert!(cert.verified);
            prop_assert!(tiling_check(&cert.d, &cert.c, cert.modulus).unwrap());
            prop_assert_eq!(cert.modulus % d.len() as u64, 0);
        }
    }
}

//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use favard_core::digits::{level_set, DigitSystem, Limits, Side};
use favard_core::projection::{counting_function, projection_measure, x_lambda_member, Window};
use favard_core::quadrature::{decay_experiment, favard_length, NodePlacement, QuadratureSpec};
use favard_core::rational::{self, Rational};
use favard_core::spectral::{
    level_symbol, plancherel_check, unit_period_mean_sq, zero_set_structure_check,
};
use favard_core::tiling::{complement_search, direction_analysis, exponent_report, tiling_check};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, secs: f64) -> bool {
    elapsed.as_secs_f64() < secs
}

fn exactness_anchors() -> Outcome {
    let ds = DigitSystem::four_corner();
    let l = Limits::default();
    let start = Instant::now();
    let m0 = projection_measure(&ds, 1, 0, 1, &l).unwrap();
    let m2 = projection_measure(&ds, 1, 2, 1, &l).unwrap();
    let m1 = projection_measure(&ds, 1, 1, 1, &l).unwrap();
    let elapsed = start.elapsed();
    let pass = m0.rational_part == rational::ratio(1, 2)
        && m2.rational_part == rational::integer(3)
        && m1.rational_part == rational::ratio(3, 2)
        && within(elapsed, 1.0);
    outcome(
        pass,
        format!(
            "t=0: {}, t=2: {}, t=1: {} ({elapsed:.2?}, limit 1 s)",
            m0.rational_part, m2.rational_part, m1.rational_part
        ),
    )
}

fn tiling_direction_stability() -> Outcome {
    let ds = DigitSystem::four_corner();
    let l = Limits::default();
    let mut parts = Vec::new();
    let mut pass = true;
    let mut last = Duration::ZERO;
    for n in 1..=8 {
        let start = Instant::now();
        let m = projection_measure(&ds, n, 2, 1, &l).unwrap();
        last = start.elapsed();
        pass &= m.rational_part == rational::integer(3);
        parts.push(m.rational_part.to_string());
    }
    pass &= within(last, 30.0);
    outcome(pass, format!("n=1..8: [{}] (n=8 in {last:.2?}, limit 30 s)", parts.join(", ")))
}

fn unit_square_favard() -> Outcome {
    let ds = DigitSystem::four_corner();
    let spec = QuadratureSpec {
        nodes: 1024,
        placement: NodePlacement::UniformTheta,
        refinements: 1,
    };
    let start = Instant::now();
    let est = favard_length(&ds, 0, &spec, &Limits::default()).unwrap();
    let elapsed = start.elapsed();
    let pass = (est.estimate - 4.0).abs() <= 1e-3 && within(elapsed, 5.0);
    outcome(pass, format!("Fav(E_0) = {:.9} (tol 1e-3, {elapsed:.2?}, limit 5 s)", est.estimate))
}

fn decay_sanity() -> Outcome {
    let ds = DigitSystem::four_corner();
    let spec = QuadratureSpec {
        nodes: 256,
        placement: NodePlacement::UniformTheta,
        refinements: 3,
    };
    let start = Instant::now();
    let report = decay_experiment(&ds, 6, &spec, None, &Limits::default()).unwrap();
    let elapsed = start.elapsed();
    let fav: Vec<f64> = report.rows.iter().map(|r| r.favard).collect();
    let nf: Vec<f64> = report.rows.iter().map(|r| r.n_times_favard).collect();
    let positive = fav.iter().all(|&f| f > 0.0);
    let band = nf.iter().cloned().fold(f64::MIN, f64::max) / nf.iter().cloned().fold(f64::MAX, f64::min);
    let pass = positive && report.nonincreasing && band <= 10.0 && within(elapsed, 600.0);
    let shown: Vec<String> = fav.iter().map(|f| format!("{f:.6}")).collect();
    outcome(
        pass,
        format!(
            "Fav(E_1..6) = [{}], nonincreasing={}, n·Fav band ratio {band:.3} (limit 10), {elapsed:.2?} (limit 600 s)",
            shown.join(", "),
            report.nonincreasing
        ),
    )
}

fn random_system(rng: &mut ChaCha8Rng) -> DigitSystem {
    const SHAPES: [(u64, usize, usize); 8] =
        [(4, 2, 2), (6, 2, 3), (6, 3, 2), (8, 2, 4), (8, 4, 2), (9, 3, 3), (10, 2, 5), (12, 3, 4)];
    let (k, na, nb) = SHAPES[rng.gen_range(0..SHAPES.len())];
    let mut pick = |count: usize| {
        let mut all: Vec<u64> = (0..k).collect();
        for i in 0..count {
            let j = rng.gen_range(i..all.len());
            all.swap(i, j);
        }
        all.truncate(count);
        all
    };
    let a = pick(na);
    let b = pick(nb);
    DigitSystem::new(k, &a, &b).unwrap()
}

/// `Σ_{a ∈ A^n} e^{-2πi a y}` summed term by term over the level set.
fn direct_symbol(ds: &DigitSystem, n: u32, y: f64) -> Complex64 {
    let set = level_set(ds, n, Side::A, &Limits::default()).unwrap();
    let denom = set.denominator().to_f64().unwrap();
    set.elements
        .iter()
        .map(|e| {
            let phase = e.to_f64().unwrap() / denom * y;
            let frac = phase - phase.floor();
            Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * frac)
        })
        .sum()
}

fn fourier_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let ds = random_system(&mut rng);
        let n = rng.gen_range(1..=5u32);
        let y = rng.gen_range(0.0..(ds.base() as f64).powi(n as i32));
        let product = level_symbol(&ds, n, Side::A, y);
        let direct = direct_symbol(&ds, n, y);
        // Relative to the sup norm |A|^n of the polynomial.
        let scale = (ds.a().len() as f64).powi(n as i32);
        worst = worst.max((product - direct).norm() / scale);
    }
    let ds = DigitSystem::four_corner();
    let l = Limits::default();
    let mut plancherel = Vec::new();
    let mut worst_p: f64 = 0.0;
    for n in 1..=3 {
        for (q, r) in [(0, 1), (1, 2), (1, 1), (2, 1)] {
            let check = plancherel_check(&ds, n, q, r, 1000.0, None, &l).unwrap();
            worst_p = worst_p.max((check.corrected - check.exact_f64).abs());
            plancherel.push(format!(
                "n={n} t={q}/{r}: {:.6} (+tail {:.2e}) vs {}",
                check.truncated, check.tail, check.exact
            ));
        }
    }
    let pass = worst <= 1e-10 && worst_p <= 1e-3;
    outcome(
        pass,
        format!(
            "symbol max rel err {worst:.2e} (tol 1e-10); Plancherel max abs err {worst_p:.2e} (tol 1e-3) [{}]",
            plancherel.join("; ")
        ),
    )
}

fn period_identity() -> Outcome {
    let ds = DigitSystem::four_corner();
    let l = Limits::default();
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for y0 in [0.0, 0.37, 5.5] {
            let v = unit_period_mean_sq(&ds, n, Side::A, y0, &l).unwrap();
            worst = worst.max((v - f64::from(1u32 << n)).abs());
        }
    }
    outcome(worst <= 1e-4, format!("max |∫ - 2^n| = {worst:.2e} over n=1..4 (tol 1e-4)"))
}

fn subsets(size: usize, universe: i64) -> Vec<Vec<i64>> {
    fn rec(start: i64, universe: i64, size: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..universe {
            cur.push(x);
            rec(x + 1, universe, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, universe, size, &mut Vec::new(), &mut out);
    out
}

fn residue_oracle(d: &[i64], c: &[i64], m: i64) -> bool {
    let mut hits = vec![0u8; m as usize];
    for &x in d {
        for &y in c {
            hits[(x + y).rem_euclid(m) as usize] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

fn tiling_suite() -> Outcome {
    let start = Instant::now();
    let mut cases = 0usize;
    let mut mismatches = 0usize;
    for dsize in 1..=4usize {
        let csize = 12 / dsize;
        let cs = subsets(csize, 12);
        for d in subsets(dsize, 12) {
            for c in &cs {
                cases += 1;
                if tiling_check(&d, c, 12).unwrap() != residue_oracle(&d, c, 12) {
                    mismatches += 1;
                }
            }
        }
    }
    let found = complement_search(&[0, 3, 6, 9], 64);
    let found_ok = found
        .as_ref()
        .is_some_and(|c| c.c == [0, 1, 2] && c.modulus == 12 && c.verified);
    let none_ok = complement_search(&[0, 1, 2, 4], 64).is_none();
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && found_ok && none_ok && within(elapsed, 60.0);
    outcome(
        pass,
        format!(
            "{cases} pairs, {mismatches} mismatches; {{0,3,6,9}} -> {:?}; {{0,1,2,4}} -> none: {none_ok} ({elapsed:.2?}, limit 60 s)",
            found.map(|c| (c.c, c.modulus))
        ),
    )
}

fn exponent_bookkeeping() -> Outcome {
    let e = exponent_report(&DigitSystem::four_corner(), 2, 1).unwrap();
    let pass = e.gamma_exact == Some(rational::ratio(1, 2))
        && e.sigma_exact == Some(rational::integer(8))
        && e.p_inf_exact == Some(rational::integer(38));
    let show = |v: &Option<Rational>| v.as_ref().map_or("-".into(), |x| x.to_string());
    outcome(
        pass,
        format!(
            "γ={}, σ={}, p_inf={}",
            show(&e.gamma_exact),
            show(&e.sigma_exact),
            show(&e.p_inf_exact)
        ),
    )
}

fn zero_set_structure() -> Outcome {
    let ds = DigitSystem::four_corner();
    let l = Limits::default();
    let analysis = direction_analysis(&ds, 2, 1, 3, 256, &l).unwrap();
    let Some(cert) = analysis.certificate else {
        return outcome(false, "no tiling certificate for q=2, r=1");
    };
    let modulus = cert.modulus / cert.d.len() as u64;
    let resolution = 1e-6 * 64.0;
    match zero_set_structure_check(&ds, 3, 0.05, Some(0.75), 2, 1, modulus, None, Some(resolution), &l) {
        Ok(report) => outcome(
            report.passed && report.root_components <= 3 && report.uncovered.is_empty(),
            format!(
                "M={modulus}: {} hits, {} lattice, {} root, {} boundary, c={:.6}, C={:.6}",
                report.hits.len(),
                report.lattice_part.len(),
                report.root_components,
                report.boundary.len(),
                report.c,
                report.big_c
            ),
        ),
        Err(e) => outcome(false, format!("M={modulus}: {e}")),
    }
}

fn x_lambda() -> Outcome {
    let ds = DigitSystem::four_corner();
    let l = Limits::default();
    let yes = x_lambda_member(&ds, 3, 0, 1, &rational::integer(8), Window::Unit, &l).unwrap();
    let no = x_lambda_member(&ds, 3, 0, 1, &rational::ratio(79, 10), Window::Unit, &l).unwrap();
    // The witness is the sup of F^3 squared-integrated: recomputed directly.
    let f3 = counting_function(&ds, 3, 0, 1, Window::Unit, &l).unwrap();
    outcome(
        yes.member && !no.member,
        format!(
            "λ=8: {}, λ=7.9: {} (max ‖F^n‖² = {}, ‖F^3‖² = {})",
            yes.member,
            no.member,
            yes.max_norm,
            f3.l2_norm_sq()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 exactness anchors", exactness_anchors),
        ("2 tiling-direction stability", tiling_direction_stability),
        ("3 unit-square Favard length", unit_square_favard),
        ("4 decay sanity", decay_sanity),
        ("5 Fourier oracle equivalence", fourier_oracle),
        ("6 per-period mean square", period_identity),
        ("7 tiling suite", tiling_suite),
        ("8 exponent bookkeeping", exponent_bookkeeping),
        ("9 zero-set structure", zero_set_structure),
        ("10 sublevel membership", x_lambda),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let o = run();
        if !o.pass {
            failures += 1;
        }
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Float helpers that work without `std`.

use num_complex::Complex64;

pub(crate) const TAU: f64 = core::f64::consts::TAU;

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn tan(x: f64) -> f64 {
    libm::tan(x)
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// `e^{-2πi·x}`.
#[inline]
pub(crate) fn cis_neg(x: f64) -> Complex64 {
    // Reduce first so large arguments keep their fractional accuracy.
    let frac = x - floor(x);
    let angle = -TAU * frac;
    Complex64::new(cos(angle), sin(angle))
}

#[inline]
pub(crate) fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// Pairwise (tree) summation in index order; deterministic for a fixed input.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        len => {
            let mid = len / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Evaluates `f(0..count)` in index order, on the rayon pool when the
/// `parallel` feature is on. Output order never depends on scheduling.
pub(crate) fn map_indexed<T, F>(count: usize, f: F) -> crate::Result<alloc::vec::Vec<T>>
where
    T: Send,
    F: Fn(usize) -> crate::Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Trigamma `ψ₁(z) = Σ_{k≥0} (z + k)^{-2}` for `z > 0`.
pub(crate) fn trigamma(mut z: f64) -> f64 {
    let mut acc = 0.0;
    while z < 12.0 {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // Asymptotic series; the first omitted term is O(z^{-11}).
    acc + inv
        + inv2 / 2.0
        + inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trigamma_values() {
        // ψ₁(1) = π²/6, ψ₁(1/2) = π²/2.
        let pi2 = core::f64::consts::PI * core::f64::consts::PI;
        assert!((trigamma(1.0) - pi2 / 6.0).abs() < 1e-13);
        assert!((trigamma(0.5) - pi2 / 2.0).abs() < 1e-13);
        let direct: f64 = (0..2_000_000).map(|k| 1.0 / (40.0 + k as f64).powi(2)).sum();
        let tail = 1.0 / (40.0 + 2_000_000.0);
        assert!((trigamma(40.0) - direct - tail).abs() < 1e-12);
    }

    #[test]
    fn pairwise_sum_is_plain_sum_on_small_ints() {
        let v: alloc::vec::Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn cis_reduces_argument() {
        let z = cis_neg(1e6 + 0.25);
        assert!((z.re).abs() < 1e-9 && (z.im + 1.0).abs() < 1e-9);
    }
}

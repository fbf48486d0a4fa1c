//! Tilings of cyclic groups and the positive-measure directions they
//! certify.
//!
//! A set `D ⊂ ℤ` tiles `ℤ_M` with complement `C` when every residue is hit
//! exactly once by `D + C`, i.e. `D(x) C(x) ≡ 1 + x + ⋯ + x^{M-1}` modulo
//! `x^M - 1`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digits::{DigitSystem, LogRatio, Limits};
use crate::projection::{projected_points, projection_measure, ProjectedMeasure};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Default upper bound on the modulus tried by [`complement_search`].
pub const DEFAULT_MAX_MODULUS: u64 = 256;

/// Integer polynomial, coefficients in ascending degree, trailing zeros
/// trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coefficients };
        p.trim();
        p
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        Self::new(c)
    }

    /// `Σ_{d ∈ set} x^d` after shifting the set to start at 0. Repeated
    /// elements add up.
    pub fn from_set(set: &[i64]) -> Self {
        let Some(&min) = set.iter().min() else {
            return Self::default();
        };
        let span = set.iter().map(|&d| (d - min) as usize).max().unwrap_or(0);
        let mut c = vec![BigInt::zero(); span + 1];
        for &d in set {
            c[(d - min) as usize] += 1;
        }
        Self::new(c)
    }

    fn trim(&mut self) {
        while self.coefficients.last().is_some_and(|c| c.is_zero()) {
            self.coefficients.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Value at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// `p · q mod (x^M - 1)`, exact.
pub fn poly_mul_mod(p: &IntPolynomial, q: &IntPolynomial, modulus: usize) -> Result<IntPolynomial> {
    if modulus == 0 {
        return Err(Error::invalid("modulus must be at least 1"));
    }
    let mut c = vec![BigInt::zero(); modulus];
    for (i, a) in p.coefficients.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coefficients.iter().enumerate() {
            c[(i + j) % modulus] += a * b;
        }
    }
    Ok(IntPolynomial::new(c))
}

/// `D ⊕ C = ℤ_M`, checked.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TilingCertificate {
    pub d: Vec<i64>,
    pub c: Vec<i64>,
    pub modulus: u64,
    pub verified: bool,
}

/// Whether `D(x) C(x) ≡ 1 + ⋯ + x^{M-1} (mod x^M - 1)`. Sets may be shifted
/// or carry negative entries; repeated entries count with multiplicity.
pub fn tiling_check(d: &[i64], c: &[i64], modulus: u64) -> Result<bool> {
    if (d.len() as u128) * (c.len() as u128) != modulus as u128 || modulus == 0 {
        return Err(Error::Size {
            d: d.len(),
            c: c.len(),
            modulus,
        });
    }
    let pd = residue_polynomial(d, modulus);
    let pc = residue_polynomial(c, modulus);
    let product = poly_mul_mod(&pd, &pc, modulus as usize)?;
    let target = IntPolynomial::new(vec![BigInt::one(); modulus as usize]);
    Ok(product == target)
}

/// `Σ x^{d mod M}`.
fn residue_polynomial(set: &[i64], modulus: u64) -> IntPolynomial {
    let mut c = vec![BigInt::zero(); modulus as usize];
    for &x in set {
        c[x.rem_euclid(modulus as i64) as usize] += 1;
    }
    IntPolynomial::new(c)
}

/// Smallest `M ≤ max_modulus` with a complement of `D` in `ℤ_M`.
///
/// `M` runs over multiples of `|D|` exceeding `max(D) - min(D)`, so the
/// translates of `D` are distinct mod `M` and the certificate describes a
/// tiling of `ℤ` by `D` itself. The complement is found by filling the
/// smallest uncovered residue with a translate of `D` and backtracking.
pub fn complement_search(d: &[i64], max_modulus: u64) -> Option<TilingCertificate> {
    let min = *d.iter().min()?;
    let mut shifted: Vec<i64> = d.iter().map(|&x| x - min).collect();
    shifted.sort_unstable();
    if shifted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let size = shifted.len() as u64;
    let span = *shifted.last().unwrap() as u64;
    let mut modulus = size;
    while modulus <= max_modulus {
        if modulus > span {
            if let Some(c) = fill(&shifted, modulus as usize) {
                let mut c: Vec<i64> = c.into_iter().map(|x| x as i64).collect();
                c.sort_unstable();
                let verified = tiling_check(d, &c, modulus).unwrap_or(false);
                return Some(TilingCertificate {
                    d: d.to_vec(),
                    c,
                    modulus,
                    verified,
                });
            }
        }
        modulus += size;
    }
    None
}

fn fill(d: &[i64], m: usize) -> Option<Vec<usize>> {
    let d: Vec<usize> = d.iter().map(|&x| x as usize).collect();
    let mut covered = vec![false; m];
    let mut chosen = Vec::with_capacity(m / d.len());
    if backtrack(&d, m, &mut covered, &mut chosen, 0) {
        Some(chosen)
    } else {
        None
    }
}

fn backtrack(d: &[usize], m: usize, covered: &mut [bool], chosen: &mut Vec<usize>, from: usize) -> bool {
    let Some(hole) = (from..m).find(|&i| !covered[i]) else {
        return true;
    };
    for &x in d {
        let c = (hole + m - x % m) % m;
        if d.iter().any(|&y| covered[(c + y) % m]) {
            continue;
        }
        for &y in d {
            covered[(c + y) % m] = true;
        }
        chosen.push(c);
        if backtrack(d, m, covered, chosen, hole + 1) {
            return true;
        }
        chosen.pop();
        for &y in d {
            covered[(c + y) % m] = false;
        }
    }
    false
}

/// Outcome of [`direction_analysis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Verdict {
    /// `D` and every probed `D_n` are distinct and `D` tiles.
    CertifiedPositive,
    /// Probe measures stable, no certificate.
    EmpiricallyPositive,
    /// `D` or some probed `D_n` repeats a value.
    Collision,
    /// Distinct sums but the probe measures decrease.
    Shrinking,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DirectionAnalysis {
    pub q: u64,
    pub r: u64,
    /// `rA + qB` with multiplicity, sorted.
    pub d: Vec<i64>,
    pub distinct: bool,
    /// Largest `n ≤ n_probe` with `D_n = D + K D + ⋯ + K^{n-1} D` distinct.
    pub distinct_levels: u32,
    pub certificate: Option<TilingCertificate>,
    pub measures: Vec<ProjectedMeasure>,
    pub verdict: Verdict,
}

/// Forms `D = rA + qB`, searches a complement and probes the projections
/// of `E_1, …, E_{n_probe}`.
pub fn direction_analysis(
    ds: &DigitSystem,
    q: u64,
    r: u64,
    n_probe: u32,
    max_modulus: u64,
    limits: &Limits,
) -> Result<DirectionAnalysis> {
    if r == 0 {
        return Err(Error::invalid("r must be positive"));
    }
    if num_integer::gcd(q, r) != 1 {
        return Err(Error::invalid("q and r must be coprime"));
    }
    if n_probe == 0 {
        return Err(Error::invalid("n_probe must be at least 1"));
    }
    let mut d: Vec<i64> = ds
        .b()
        .iter()
        .flat_map(|&b| ds.a().iter().map(move |&a| (r * a + q * b) as i64))
        .collect();
    d.sort_unstable();
    let distinct = d.windows(2).all(|w| w[0] != w[1]);

    let mut distinct_levels = 0;
    let mut measures = Vec::with_capacity(n_probe as usize);
    for n in 1..=n_probe {
        // The integer projected points at level n are exactly D_n.
        let points = projected_points(ds, n, q, r, limits)?;
        if distinct_levels + 1 == n && points.atoms.iter().all(|&(_, k)| k == 1) {
            distinct_levels = n;
        }
        measures.push(projection_measure(ds, n, q, r, limits)?);
    }
    let certificate = if distinct {
        complement_search(&d, max_modulus).filter(|c| c.verified)
    } else {
        None
    };
    let stable = measures
        .windows(2)
        .all(|w| w[0].rational_part == w[1].rational_part);
    let verdict = if !distinct || distinct_levels < n_probe {
        Verdict::Collision
    } else if certificate.is_some() {
        Verdict::CertifiedPositive
    } else if stable {
        Verdict::EmpiricallyPositive
    } else {
        Verdict::Shrinking
    };
    Ok(DirectionAnalysis {
        q,
        r,
        d,
        distinct,
        distinct_levels,
        certificate,
        measures,
        verdict,
    })
}

/// `γ`, `σ = (1 + r + q)/γ` and the threshold `p_∞ = 6 + 4σ`, exact where
/// `γ` is rational.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExponentReport {
    pub q: u64,
    pub r: u64,
    pub gamma: LogRatio,
    pub gamma_value: f64,
    pub sigma_value: f64,
    pub p_inf_value: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::as_opt_str"))]
    pub gamma_exact: Option<Rational>,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::as_opt_str"))]
    pub sigma_exact: Option<Rational>,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::as_opt_str"))]
    pub p_inf_exact: Option<Rational>,
}

pub fn exponent_report(ds: &DigitSystem, q: u64, r: u64) -> Result<ExponentReport> {
    if r == 0 || num_integer::gcd(q, r) != 1 {
        return Err(Error::invalid("q/r must be a reduced fraction with r > 0"));
    }
    let gamma = ds.exponents().gamma;
    Ok(exponents_from_gamma(gamma, q, r))
}

/// The same bookkeeping for an arbitrary `γ = log(numer)/log(denom)`.
pub fn exponents_from_gamma(gamma: LogRatio, q: u64, r: u64) -> ExponentReport {
    let weight = (1 + r + q) as f64;
    let gamma_value = gamma.value();
    let sigma_value = weight / gamma_value;
    let gamma_exact = gamma.exact();
    let sigma_exact = gamma_exact
        .as_ref()
        .filter(|g| !g.is_zero())
        .map(|g| rational::integer((1 + r + q) as i128) / g);
    let p_inf_exact = sigma_exact
        .as_ref()
        .map(|s| rational::integer(6) + rational::integer(4) * s);
    ExponentReport {
        q,
        r,
        gamma,
        gamma_value,
        sigma_value,
        p_inf_value: 6.0 + 4.0 * sigma_value,
        gamma_exact,
        sigma_exact,
        p_inf_exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(d: &[i64], c: &[i64], m: u64) -> bool {
        let mut hits = vec![0u32; m as usize];
        for &x in d {
            for &y in c {
                hits[(x + y).rem_euclid(m as i64) as usize] += 1;
            }
        }
        hits.iter().all(|&h| h == 1)
    }

    #[test]
    fn poly_mul_mod_examples() {
        let p = IntPolynomial::from_i64(&[1, 0, 0, 1]);
        let q = IntPolynomial::from_i64(&[1, 1]);
        assert_eq!(poly_mul_mod(&p, &q, 4).unwrap(), IntPolynomial::from_i64(&[2, 1, 0, 1]));
        assert_eq!(poly_mul_mod(&p, &IntPolynomial::one(), 4).unwrap(), p);
        assert_eq!(
            poly_mul_mod(&IntPolynomial::monomial(5), &IntPolynomial::one(), 5).unwrap(),
            IntPolynomial::one()
        );
        assert!(poly_mul_mod(&p, &q, 0).is_err());
    }

    #[test]
    fn polynomial_basics() {
        let p = IntPolynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(7));
        assert!(IntPolynomial::from_i64(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::from_set(&[5, 8]), IntPolynomial::from_i64(&[1, 0, 0, 1]));
        assert_eq!(IntPolynomial::from_set(&[1, 1]), IntPolynomial::from_i64(&[2]));
    }

    #[test]
    fn tiling_check_examples() {
        assert!(tiling_check(&[0, 3, 6, 9], &[0, 1, 2], 12).unwrap());
        assert!(tiling_check(&[0, 2], &[0, 1], 4).unwrap());
        assert!(!tiling_check(&[0, 3, 6, 9], &[0, 1, 3], 12).unwrap());
        assert!(matches!(tiling_check(&[0, 1], &[0], 3), Err(Error::Size { .. })));
        assert!(tiling_check(&[-12, 3, 18, 9], &[0, 13, -10], 12).unwrap());
    }

    #[test]
    fn tiling_check_matches_brute_force_small() {
        // Every pair of subsets of {0..5} with |D||C| = M for M ≤ 12.
        for m in 1..=12u64 {
            for dm in 1u32..64 {
                let d: Vec<i64> = (0..6).filter(|i| dm >> i & 1 == 1).collect();
                if m % d.len() as u64 != 0 {
                    continue;
                }
                for cm in 1u32..64 {
                    let c: Vec<i64> = (0..6).filter(|i| cm >> i & 1 == 1).collect();
                    if (d.len() * c.len()) as u64 != m {
                        continue;
                    }
                    assert_eq!(tiling_check(&d, &c, m).unwrap(), brute(&d, &c, m), "{d:?} {c:?} {m}");
                }
            }
        }
    }

    #[test]
    fn complement_search_examples() {
        let cert = complement_search(&[0, 3, 6, 9], 64).unwrap();
        assert_eq!((cert.c.as_slice(), cert.modulus), (&[0, 1, 2][..], 12));
        assert!(cert.verified);
        let cert = complement_search(&[0], 5).unwrap();
        assert_eq!((cert.c.as_slice(), cert.modulus), (&[0][..], 1));
        assert!(complement_search(&[0, 1, 2, 4], 64).is_none());
        assert!(complement_search(&[0, 0, 1], 64).is_none());
        assert!(complement_search(&[], 64).is_none());
        let cert = complement_search(&[0, 1, 4, 5], 64).unwrap();
        assert_eq!((cert.c.as_slice(), cert.modulus), (&[0, 2][..], 8));
    }

    #[test]
    fn direction_examples() {
        let ds = DigitSystem::four_corner();
        let l = Limits::default();
        let a = direction_analysis(&ds, 2, 1, 3, DEFAULT_MAX_MODULUS, &l).unwrap();
        assert_eq!(a.d, [0, 3, 6, 9]);
        assert!(a.distinct);
        let cert = a.certificate.as_ref().unwrap();
        assert_eq!((cert.c.as_slice(), cert.modulus), (&[0, 1, 2][..], 12));
        assert_eq!(a.verdict, Verdict::CertifiedPositive);
        assert!(a.measures.iter().all(|m| m.rational_part == rational::integer(3)));

        let a = direction_analysis(&ds, 1, 1, 3, DEFAULT_MAX_MODULUS, &l).unwrap();
        assert_eq!(a.d, [0, 3, 3, 6]);
        assert_eq!(a.verdict, Verdict::Collision);

        // D tiles but D_2 collides: 0 + 4·1 = 4 + 4·0.
        let ds = DigitSystem::new(4, &[0, 1], &[0, 2]).unwrap();
        let a = direction_analysis(&ds, 2, 1, 3, DEFAULT_MAX_MODULUS, &l).unwrap();
        assert_eq!(a.d, [0, 1, 4, 5]);
        assert!(a.distinct);
        assert!(a.certificate.is_some());
        assert_eq!(a.distinct_levels, 1);
        assert_eq!(a.verdict, Verdict::Collision);
        assert_eq!(a.measures[0].rational_part, rational::integer(2));
        assert_eq!(a.measures[1].rational_part, rational::ratio(3, 2));

        assert!(direction_analysis(&ds, 2, 2, 3, 64, &l).is_err());
        assert!(direction_analysis(&ds, 1, 0, 3, 64, &l).is_err());
    }

    #[test]
    fn exponent_examples() {
        let ds = DigitSystem::four_corner();
        let e = exponent_report(&ds, 2, 1).unwrap();
        assert_eq!(e.gamma_exact, Some(rational::ratio(1, 2)));
        assert_eq!(e.sigma_exact, Some(rational::integer(8)));
        assert_eq!(e.p_inf_exact, Some(rational::integer(38)));
        assert!((e.p_inf_value - 38.0).abs() < 1e-12);

        let e = exponents_from_gamma(LogRatio { numer_base: 3, denom_base: 9 }, 1, 1);
        assert_eq!(e.sigma_exact, Some(rational::integer(6)));
        assert_eq!(e.p_inf_exact, Some(rational::integer(30)));

        let ds = DigitSystem::new(6, &[0, 1], &[0, 1, 2]).unwrap();
        let e = exponent_report(&ds, 1, 2).unwrap();
        assert!(e.gamma_exact.is_none());
        assert!(e.p_inf_value > 6.0);
    }
}

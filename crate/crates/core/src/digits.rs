//! Digit systems and base-`K` level sets.
//!
//! A level set at level `n` holds every expansion `Σ_{j=1}^n d_j K^{n-j}`
//! with digits from one side of the system. Elements are integers with an
//! implicit denominator `K^n`, so the point they stand for is
//! `element / K^n ∈ [0, 1)`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::math;
use crate::rational::Rational;
use crate::{Error, Result};

/// Default cap on the number of elements a single enumeration may produce.
pub const DEFAULT_ELEMENT_CAP: u128 = 1 << 24;

/// Resource limits shared by every enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }
}

impl Limits {
    pub fn with_cap(element_cap: u128) -> Self {
        Limits { element_cap }
    }

    /// Fails with [`Error::Resource`] unless `base^exp` fits under the cap.
    pub fn check_power(&self, base: u64, exp: u32) -> Result<u128> {
        let requested = (base as u128).checked_pow(exp).unwrap_or(u128::MAX);
        if requested > self.element_cap {
            return Err(Error::Resource {
                requested,
                cap: self.element_cap,
            });
        }
        Ok(requested)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// `log(numer_base) / log(denom_base)`, kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LogRatio {
    pub numer_base: u64,
    pub denom_base: u64,
}

impl LogRatio {
    pub fn value(&self) -> f64 {
        math::ln(self.numer_base as f64) / math::ln(self.denom_base as f64)
    }

    /// The exact value when it is rational, i.e. when both bases are powers
    /// of a common integer.
    pub fn exact(&self) -> Option<Rational> {
        if self.numer_base == 1 {
            return Some(Rational::zero());
        }
        let (g1, e1) = perfect_power_root(self.numer_base);
        let (g2, e2) = perfect_power_root(self.denom_base);
        (g1 == g2).then(|| Rational::new(e1.into(), e2.into()))
    }
}

impl PartialOrd for LogRatio {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        if self.denom_base == other.denom_base {
            return self.numer_base.partial_cmp(&other.numer_base);
        }
        self.value().partial_cmp(&other.value())
    }
}

/// Smallest `g` with `g^e = x` and the matching `e`.
fn perfect_power_root(x: u64) -> (u64, u32) {
    if x < 4 {
        return (x, 1);
    }
    for e in (2..=63u32).rev() {
        let g = integer_root(x, e);
        if g >= 2 && g.checked_pow(e) == Some(x) {
            let (h, f) = perfect_power_root(g);
            return (h, e * f);
        }
    }
    (x, 1)
}

fn integer_root(x: u64, e: u32) -> u64 {
    let guess = math::round(math::powf(x as f64, 1.0 / e as f64)) as u64;
    // The float guess can be off by one either way.
    let lo = guess.saturating_sub(1);
    (lo..=guess + 1)
        .filter(|g| g.checked_pow(e).is_some_and(|p| p <= x))
        .max()
        .unwrap_or(0)
}

/// Dimensions of the factor Cantor sets.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Exponents {
    pub alpha: LogRatio,
    pub beta: LogRatio,
    /// The smaller of `alpha` and `beta`.
    pub gamma: LogRatio,
}

impl Exponents {
    fn new(base: u64, a: usize, b: usize) -> Self {
        let alpha = LogRatio {
            numer_base: a as u64,
            denom_base: base,
        };
        let beta = LogRatio {
            numer_base: b as u64,
            denom_base: base,
        };
        let gamma = if a <= b { alpha } else { beta };
        Exponents { alpha, beta, gamma }
    }
}

/// A validated `(K, A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DigitSystem {
    base: u64,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl DigitSystem {
    /// Validates raw digits. Digits may arrive in any order; they are
    /// stored sorted.
    pub fn new(base: u64, a: &[u64], b: &[u64]) -> Result<Self> {
        let a = Self::check_digits(base, a)?;
        let b = Self::check_digits(base, b)?;
        if base < 2
            || a.len() < 2
            || b.len() < 2
            || (a.len() as u128) * (b.len() as u128) != base as u128
        {
            return Err(Error::Cardinality {
                base,
                a: a.len(),
                b: b.len(),
            });
        }
        Ok(DigitSystem { base, a, b })
    }

    /// The four-corner set: `K = 4`, `A = B = {0, 3}`.
    pub fn four_corner() -> Self {
        DigitSystem {
            base: 4,
            a: alloc::vec![0, 3],
            b: alloc::vec![0, 3],
        }
    }

    fn check_digits(base: u64, digits: &[u64]) -> Result<Vec<u64>> {
        let mut sorted = digits.to_vec();
        sorted.sort_unstable();
        for &d in &sorted {
            if d >= base {
                return Err(Error::DigitRange { digit: d, base });
            }
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateDigit { digit: w[0] });
        }
        Ok(sorted)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn digits(&self, side: Side) -> &[u64] {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn exponents(&self) -> Exponents {
        Exponents::new(self.base, self.a.len(), self.b.len())
    }

    /// `(K, B, A)`: the image under the reflection `(x, y) ↦ (y, x)`.
    pub fn swapped(&self) -> Self {
        DigitSystem {
            base: self.base,
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// `(K, A', B)` with `A' = {K-1-a}`: the image under `x ↦ 1 - x`.
    pub fn reflected_x(&self) -> Self {
        let mut a: Vec<u64> = self.a.iter().map(|&d| self.base - 1 - d).collect();
        a.sort_unstable();
        DigitSystem {
            base: self.base,
            a,
            b: self.b.clone(),
        }
    }

    /// Level-`n` encodings of one side, streamed in ascending order.
    pub fn encodings(&self, side: Side, n: u32) -> Result<LevelIter<'_>> {
        LevelIter::new(self.digits(side), self.base, n)
    }
}

/// Mixed-radix odometer over level-`n` encodings, ascending.
///
/// Values are `u128`; construction fails if `K^n` does not fit.
#[derive(Debug, Clone)]
pub struct LevelIter<'a> {
    digits: &'a [u64],
    /// `place[j] = K^{n-1-j}`.
    place: Vec<u128>,
    counter: Vec<usize>,
    value: u128,
    done: bool,
}

impl<'a> LevelIter<'a> {
    fn new(digits: &'a [u64], base: u64, n: u32) -> Result<Self> {
        let mut place = Vec::with_capacity(n as usize);
        for j in 0..n {
            let p = (base as u128)
                .checked_pow(n - 1 - j)
                .ok_or(Error::Resource {
                    requested: u128::MAX,
                    cap: u128::MAX,
                })?;
            place.push(p);
        }
        if (base as u128).checked_pow(n).is_none() {
            return Err(Error::Resource {
                requested: u128::MAX,
                cap: u128::MAX,
            });
        }
        let d0 = digits[0] as u128;
        let value = place.iter().map(|p| p * d0).sum();
        Ok(LevelIter {
            digits,
            counter: alloc::vec![0; n as usize],
            place,
            value,
            done: false,
        })
    }
}

impl Iterator for LevelIter<'_> {
    type Item = u128;

    fn next(&mut self) -> Option<u128> {
        if self.done {
            return None;
        }
        let out = self.value;
        let mut j = self.counter.len();
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            let old = self.digits[self.counter[j]] as u128;
            if self.counter[j] + 1 < self.digits.len() {
                self.counter[j] += 1;
                let new = self.digits[self.counter[j]] as u128;
                self.value = self.value - old * self.place[j] + new * self.place[j];
                break;
            }
            self.counter[j] = 0;
            let first = self.digits[0] as u128;
            self.value = self.value - old * self.place[j] + first * self.place[j];
        }
        Some(out)
    }
}

/// All level-`n` encodings of one side, sorted, with implicit denominator
/// `K^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub base: u64,
    pub level: u32,
    pub elements: Vec<BigUint>,
}

impl LevelSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn denominator(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.base), self.level as usize)
    }

    /// The point `elements[index] / K^n`.
    pub fn point(&self, index: usize) -> Rational {
        Rational::new(
            self.elements[index].clone().into(),
            self.denominator().into(),
        )
    }
}

pub fn level_set(ds: &DigitSystem, n: u32, side: Side, limits: &Limits) -> Result<LevelSet> {
    let digits = ds.digits(side);
    limits.check_power(digits.len() as u64, n)?;
    let base = BigUint::from(ds.base);
    let mut elements = alloc::vec![BigUint::zero()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(elements.len() * digits.len());
        for u in &elements {
            let shifted = u * &base;
            for &d in digits {
                next.push(&shifted + BigUint::from(d));
            }
        }
        elements = next;
    }
    Ok(LevelSet {
        base: ds.base,
        level: n,
        elements,
    })
}

/// Whether `full = {K^{fine.level}·u + v : u ∈ coarse, v ∈ fine}` as sets.
pub fn split_identity_holds(full: &LevelSet, coarse: &LevelSet, fine: &LevelSet) -> bool {
    if full.base != coarse.base
        || full.base != fine.base
        || full.level != coarse.level + fine.level
    {
        return false;
    }
    let shift = num_traits::pow(BigUint::from(full.base), fine.level as usize);
    let mut sums: Vec<BigUint> = Vec::with_capacity(coarse.len() * fine.len());
    for u in &coarse.elements {
        let high = u * &shift;
        for v in &fine.elements {
            sums.push(&high + v);
        }
    }
    sums.sort_unstable();
    let mut expected = full.elements.clone();
    expected.sort_unstable();
    sums == expected
}

/// Checks `A^m = A^m_n + A^n` (and the same for `B`) on integer encodings.
pub fn split_identity_check(ds: &DigitSystem, m: u32, n: u32, limits: &Limits) -> Result<bool> {
    if n >= m {
        return Err(Error::invalid("split identity needs n < m"));
    }
    for side in [Side::A, Side::B] {
        let full = level_set(ds, m, side, limits)?;
        let coarse = level_set(ds, m - n, side, limits)?;
        let fine = level_set(ds, n, side, limits)?;
        if !split_identity_holds(&full, &coarse, &fine) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `K^n` as a `BigUint`.
pub fn base_power(base: u64, n: u32) -> BigUint {
    let mut p = BigUint::one();
    for _ in 0..n {
        p *= base;
    }
    p
}

//! Projections of the `n`-th iteration onto lines.
//!
//! The projection `π_θ(x, y) = x cos θ + y sin θ` of `E_n` is, after dividing
//! by `cos θ`, the union of the intervals `[a + t b, a + t b + (1+t) K^{-n}]`
//! over `a ∈ A^n`, `b ∈ B^n`, with `t = tan θ`. For a rational slope
//! `t = q/r` every endpoint lies on the lattice `(r K^n)⁻¹ ℤ`, so the
//! whole computation runs on integers: a point is `r·a_int + q·b_int` and
//! the interval width is `r + q` lattice units.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::digits::{DigitSystem, Limits, Side};
use crate::interval::{FloatUnion, LatticeUnion, DEFAULT_COLLISION_TOLERANCE};
use crate::math;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A nonnegative slope `t = tan θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Slope {
    /// `q / r` in lowest terms, `r ≥ 1`.
    Rational { q: u64, r: u64 },
    Real(f64),
}

impl Slope {
    /// Reduces `q / r`; `r` must be positive.
    pub fn rational(q: u64, r: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::invalid("slope denominator must be positive"));
        }
        let g = q.gcd(&r);
        Ok(Slope::Rational { q: q / g, r: r / g })
    }

    pub fn real(t: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::invalid("slope must be finite and nonnegative"));
        }
        Ok(Slope::Real(t))
    }

    pub fn from_rational(t: &Rational) -> Result<Self> {
        if t.numer() < &BigInt::zero() {
            return Err(Error::invalid("slope must be nonnegative"));
        }
        let q = t
            .numer()
            .to_u64()
            .ok_or_else(|| Error::invalid("slope numerator too large"))?;
        let r = t
            .denom()
            .to_u64()
            .ok_or_else(|| Error::invalid("slope denominator too large"))?;
        Slope::rational(q, r)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Slope::from_rational(&rational::parse(text)?)
    }

    pub fn value(&self) -> f64 {
        match *self {
            Slope::Rational { q, r } => q as f64 / r as f64,
            Slope::Real(t) => t,
        }
    }

    pub fn cos_theta(&self) -> f64 {
        match *self {
            Slope::Rational { q, r } => {
                let (q, r) = (q as f64, r as f64);
                r / math::sqrt(q * q + r * r)
            }
            Slope::Real(t) => 1.0 / math::sqrt(1.0 + t * t),
        }
    }

    pub fn sin_theta(&self) -> f64 {
        self.value() * self.cos_theta()
    }

    pub fn as_rational(&self) -> Option<(u64, u64)> {
        match *self {
            Slope::Rational { q, r } => Some((q, r)),
            Slope::Real(_) => None,
        }
    }
}

/// Projected atoms `r·a_int + q·b_int` with multiplicities; the point they
/// stand for is `value / denominator`, `denominator = r K^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedPoints {
    pub denominator: u128,
    /// Sorted by value; multiplicities are positive.
    pub atoms: Vec<(u128, u64)>,
}

impl ProjectedPoints {
    pub fn total_multiplicity(&self) -> u64 {
        self.atoms.iter().map(|&(_, m)| m).sum()
    }

    pub fn distinct_values(&self) -> Vec<u128> {
        self.atoms.iter().map(|&(v, _)| v).collect()
    }
}

fn overflow() -> Error {
    Error::Resource {
        requested: u128::MAX,
        cap: u128::MAX,
    }
}

pub fn projected_points(
    ds: &DigitSystem,
    n: u32,
    q: u64,
    r: u64,
    limits: &Limits,
) -> Result<ProjectedPoints> {
    let Slope::Rational { q, r } = Slope::rational(q, r)? else {
        unreachable!()
    };
    let count = limits.check_power(ds.base(), n)?;
    let scale = (ds.base() as u128).checked_pow(n).ok_or_else(overflow)?;
    let denominator = (r as u128).checked_mul(scale).ok_or_else(overflow)?;
    let a: Vec<u128> = ds.encodings(Side::A, n)?.collect();
    let b: Vec<u128> = ds.encodings(Side::B, n)?.collect();
    // Largest value r·a + q·b must fit.
    let a_max = *a.last().unwrap_or(&0);
    let b_max = *b.last().unwrap_or(&0);
    (r as u128)
        .checked_mul(a_max)
        .and_then(|x| (q as u128).checked_mul(b_max).and_then(|y| x.checked_add(y)))
        .and_then(|x| x.checked_add((r + q) as u128 * scale))
        .ok_or_else(overflow)?;
    let mut values: Vec<u128> = Vec::with_capacity(count as usize);
    for &bv in &b {
        let qb = q as u128 * bv;
        values.extend(a.iter().map(|&av| r as u128 * av + qb));
    }
    values.sort_unstable();
    let mut atoms: Vec<(u128, u64)> = Vec::new();
    for v in values {
        match atoms.last_mut() {
            Some(last) if last.0 == v => last.1 += 1,
            _ => atoms.push((v, 1)),
        }
    }
    Ok(ProjectedPoints { denominator, atoms })
}

/// `|π_θ(E_n)|` for a rational slope, kept as `rational_part · cos θ`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProjectedMeasure {
    pub q: u64,
    pub r: u64,
    /// Length of the union in line-parameter units (before the `cos θ`
    /// factor).
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::as_str"))]
    pub rational_part: Rational,
    pub cos_theta: f64,
    pub value: f64,
}

impl ProjectedMeasure {
    fn new(q: u64, r: u64, rational_part: Rational) -> Self {
        let slope = Slope::Rational { q, r };
        let cos_theta = slope.cos_theta();
        let value = rational::to_f64(&rational_part) * cos_theta;
        ProjectedMeasure {
            q,
            r,
            rational_part,
            cos_theta,
            value,
        }
    }

    /// `measure²`, exact: `rational_part² · r² / (q² + r²)`.
    pub fn squared(&self) -> Rational {
        let q = BigInt::from(self.q);
        let r = BigInt::from(self.r);
        let cos_sq = Rational::new(&r * &r, &q * &q + &r * &r);
        &self.rational_part * &self.rational_part * cos_sq
    }
}

/// The union `⋃ [x, x + (1+t) K^{-n}]` over projected points, on the
/// lattice `(r K^n)⁻¹ ℤ`.
pub fn projection_union(
    ds: &DigitSystem,
    n: u32,
    q: u64,
    r: u64,
    limits: &Limits,
) -> Result<LatticeUnion> {
    let points = projected_points(ds, n, q, r, limits)?;
    let (q, r) = reduced(q, r)?;
    let width = (q + r) as u128;
    Ok(LatticeUnion::from_sorted_points(
        &points.distinct_values(),
        width,
        points.denominator,
    ))
}

fn reduced(q: u64, r: u64) -> Result<(u64, u64)> {
    match Slope::rational(q, r)? {
        Slope::Rational { q, r } => Ok((q, r)),
        Slope::Real(_) => unreachable!(),
    }
}

/// Exact `|π_θ(E_n)|` for `tan θ = q/r`.
pub fn projection_measure(
    ds: &DigitSystem,
    n: u32,
    q: u64,
    r: u64,
    limits: &Limits,
) -> Result<ProjectedMeasure> {
    let (q, r) = reduced(q, r)?;
    let union = projection_union(ds, n, q, r, limits)?;
    Ok(ProjectedMeasure::new(q, r, union.measure()))
}

/// Float sweep for any nonnegative slope. Returns the union length in
/// line-parameter units; multiply by `cos θ` for the measure.
pub fn projection_parameter_length_f64(
    ds: &DigitSystem,
    n: u32,
    t: f64,
    tolerance: f64,
    limits: &Limits,
) -> Result<f64> {
    limits.check_power(ds.base(), n)?;
    let scale = math::powf(ds.base() as f64, n as f64);
    let a: Vec<f64> = ds.encodings(Side::A, n)?.map(|v| v as f64 / scale).collect();
    let b: Vec<f64> = ds.encodings(Side::B, n)?.map(|v| v as f64 / scale).collect();
    let mut points = Vec::with_capacity(a.len() * b.len());
    for &bv in &b {
        points.extend(a.iter().map(|&av| av + t * bv));
    }
    Ok(FloatUnion::from_points(points, (1.0 + t) / scale, tolerance).measure())
}

/// `|π_θ(E_n)|` for a slope of either kind, as a float.
pub fn projection_measure_f64(
    ds: &DigitSystem,
    n: u32,
    slope: &Slope,
    limits: &Limits,
) -> Result<f64> {
    match *slope {
        Slope::Rational { q, r } => Ok(projection_measure(ds, n, q, r, limits)?.value),
        Slope::Real(t) => Ok(projection_parameter_length_f64(
            ds,
            n,
            t,
            DEFAULT_COLLISION_TOLERANCE,
            limits,
        )? * slope.cos_theta()),
    }
}

/// `|π_θ(E_n)|` for any `θ ∈ [0, π]`, by float sweep.
///
/// Angles past `π/4` use the swapped system `(K, B, A)` at `π/2 - θ`;
/// angles past `π/2` use the x-reflected system at `π - θ`. Every sweep
/// therefore runs with `t ∈ [0, 1]`.
pub fn projection_length_at_angle(
    ds: &DigitSystem,
    n: u32,
    theta: f64,
    limits: &Limits,
) -> Result<f64> {
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::invalid("angle outside [0, pi]"));
    }
    if theta > FRAC_PI_2 {
        return projection_length_at_angle(&ds.reflected_x(), n, PI - theta, limits);
    }
    let (system, angle) = if theta > FRAC_PI_4 {
        (ds.swapped(), FRAC_PI_2 - theta)
    } else {
        (ds.clone(), theta)
    };
    let t = math::tan(angle);
    let length =
        projection_parameter_length_f64(&system, n, t, DEFAULT_COLLISION_TOLERANCE, limits)?;
    Ok(length * math::cos(angle))
}

/// Which normalized window the projected measure is convolved with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Window {
    /// `K^n 1_{[0, K^{-n}]}`; total mass 1.
    #[default]
    Unit,
    /// `K^n 1_{[0, (1+t) K^{-n}]}`; counts the squares over each point.
    Shadow,
}

/// Piecewise-constant function with breakpoints on a lattice.
///
/// Takes `values[i]` on `(breakpoints[i], breakpoints[i+1]) / denominator`
/// and zero outside the first and last breakpoints. Adjacent pieces always
/// carry different values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    pub denominator: u128,
    pub breakpoints: Vec<u128>,
    pub values: Vec<u64>,
}

impl StepFunction {
    /// Sum of windows `[x, x + width]`, each weighted by its multiplicity.
    pub fn from_atoms(atoms: &[(u128, u64)], width: u128, denominator: u128) -> Self {
        if width == 0 || atoms.is_empty() {
            return StepFunction {
                denominator,
                breakpoints: Vec::new(),
                values: Vec::new(),
            };
        }
        // Starts and ends are each sorted; merge them.
        let mut breakpoints: Vec<u128> = Vec::new();
        let mut values: Vec<u64> = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        let mut level: i128 = 0;
        while i < atoms.len() || j < atoms.len() {
            let next_start = atoms.get(i).map(|a| a.0);
            let next_end = atoms.get(j).map(|a| a.0 + width);
            let x = match (next_start, next_end) {
                (Some(s), Some(e)) => s.min(e),
                (None, Some(e)) => e,
                (Some(s), None) => s,
                (None, None) => break,
            };
            while i < atoms.len() && atoms[i].0 == x {
                level += atoms[i].1 as i128;
                i += 1;
            }
            while j < atoms.len() && atoms[j].0 + width == x {
                level -= atoms[j].1 as i128;
                j += 1;
            }
            let value = level as u64;
            match values.last() {
                Some(&last) if last == value => {}
                _ => {
                    breakpoints.push(x);
                    values.push(value);
                }
            }
        }
        // The sweep ends at level 0; that trailing value is the right edge.
        debug_assert_eq!(values.last(), Some(&0));
        values.pop();
        StepFunction {
            denominator,
            breakpoints,
            values,
        }
    }

    pub fn breakpoint(&self, index: usize) -> Rational {
        Rational::new(
            BigInt::from(BigUint::from(self.breakpoints[index])),
            BigInt::from(BigUint::from(self.denominator)),
        )
    }

    /// Value at `x`; at a breakpoint, the value of the piece to its right.
    pub fn value_at(&self, x: &Rational) -> u64 {
        if self.breakpoints.is_empty() {
            return 0;
        }
        let d = Rational::from_integer(BigInt::from(self.denominator));
        let scaled = x * d;
        // Pieces are half-open [b_i, b_{i+1}) for this query.
        let idx = self
            .breakpoints
            .partition_point(|&b| Rational::from_integer(BigInt::from(b)) <= scaled);
        if idx == 0 || idx > self.values.len() {
            0
        } else {
            self.values[idx - 1]
        }
    }

    pub fn sup(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    fn weighted_sum(&self, power: u32) -> Rational {
        let mut acc = BigUint::zero();
        for (i, &v) in self.values.iter().enumerate() {
            let dx = self.breakpoints[i + 1] - self.breakpoints[i];
            acc += BigUint::from(v).pow(power) * BigUint::from(dx);
        }
        Rational::new(BigInt::from(acc), BigInt::from(self.denominator))
    }

    pub fn integral(&self) -> Rational {
        self.weighted_sum(1)
    }

    pub fn l2_norm_sq(&self) -> Rational {
        self.weighted_sum(2)
    }
}

pub fn counting_function(
    ds: &DigitSystem,
    n: u32,
    q: u64,
    r: u64,
    window: Window,
    limits: &Limits,
) -> Result<StepFunction> {
    let (q, r) = reduced(q, r)?;
    let points = projected_points(ds, n, q, r, limits)?;
    let width = match window {
        Window::Unit => r as u128,
        Window::Shadow => (r + q) as u128,
    };
    Ok(StepFunction::from_atoms(
        &points.atoms,
        width,
        points.denominator,
    ))
}

pub fn l2_norm_sq(
    ds: &DigitSystem,
    n: u32,
    q: u64,
    r: u64,
    window: Window,
    limits: &Limits,
) -> Result<Rational> {
    Ok(counting_function(ds, n, q, r, window, limits)?.l2_norm_sq())
}

/// Membership of one slope in `{t : max_{1≤n≤N} ∫ F_n² ≤ λ}`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct XLambdaMembership {
    pub q: u64,
    pub r: u64,
    pub member: bool,
    /// First level attaining the maximum.
    pub witness_level: u32,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::as_str"))]
    pub max_norm: Rational,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::as_vec_str"))]
    pub norms: Vec<Rational>,
}

pub fn x_lambda_member(
    ds: &DigitSystem,
    max_level: u32,
    q: u64,
    r: u64,
    lambda: &Rational,
    window: Window,
    limits: &Limits,
) -> Result<XLambdaMembership> {
    if max_level < 1 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let (q, r) = reduced(q, r)?;
    let mut norms = Vec::with_capacity(max_level as usize);
    for n in 1..=max_level {
        norms.push(l2_norm_sq(ds, n, q, r, window, limits)?);
    }
    let (witness, max_norm) = norms
        .iter()
        .enumerate()
        .fold((0usize, &norms[0]), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    let max_norm = max_norm.clone();
    Ok(XLambdaMembership {
        q,
        r,
        member: &max_norm <= lambda,
        witness_level: witness as u32 + 1,
        max_norm,
        norms,
    })
}

/// Fraction of a slope grid lying in the sublevel set.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct XLambdaEstimate {
    pub max_level: u32,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::as_str"))]
    pub lambda: Rational,
    pub members: usize,
    pub total: usize,
    pub fraction: f64,
    pub per_slope: Vec<XLambdaMembership>,
}

pub fn x_lambda_measure_estimate(
    ds: &DigitSystem,
    max_level: u32,
    lambda: &Rational,
    grid: &[(u64, u64)],
    window: Window,
    limits: &Limits,
) -> Result<XLambdaEstimate> {
    if grid.is_empty() {
        return Err(Error::invalid("slope grid is empty"));
    }
    let per_slope = grid
        .iter()
        .map(|&(q, r)| x_lambda_member(ds, max_level, q, r, lambda, window, limits))
        .collect::<Result<Vec<_>>>()?;
    let members = per_slope.iter().filter(|m| m.member).count();
    Ok(XLambdaEstimate {
        max_level,
        lambda: lambda.clone(),
        members,
        total: per_slope.len(),
        fraction: members as f64 / per_slope.len() as f64,
        per_slope,
    })
}

/// Farey sequence of the given order: reduced `q/r ∈ [0, 1]` with
/// `r ≤ order`, ascending.
pub fn farey_sequence(order: u64) -> Vec<(u64, u64)> {
    if order == 0 {
        return Vec::new();
    }
    let mut out = alloc::vec![(0, 1)];
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, order);
    while c <= order {
        let k = (order + b) / d;
        let (na, nb) = (c, d);
        let (nc, nd) = (k * c - a, k * d - b);
        a = na;
        b = nb;
        c = nc;
        d = nd;
        out.push((a, b));
    }
    out
}

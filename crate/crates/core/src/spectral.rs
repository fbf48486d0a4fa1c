//! Fourier-side diagnostics of the projected measures.
//!
//! With `ν^n[t] = K^{-n} Σ δ_{a + t b}` the transform factors through the
//! digit generating functions:
//!
//! ```text
//! ν̂^n(ξ) = K^{-n} · A^n(e^{-2πiξ}) · B^n(e^{-2πitξ}),
//! A^n(e^{-2πiy}) = Π_{j=1}^{n} Σ_{d∈A} e^{-2πi d K^{-j} y},
//! ```
//!
//! so every evaluation costs `O(n·|digits|)` instead of `O(K^n)`.
//! Grids respect a Nyquist guard: `|ν̂|²` has frequencies at most `1 + t`,
//! and a step above `guard / (1 + t)` is refused.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::digits::{DigitSystem, Limits, Side};
use crate::math;
use crate::projection::{l2_norm_sq, Slope, Window};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Largest admissible `step · (1 + t)`.
pub const NYQUIST_GUARD: f64 = 0.1;
/// Default `step · (1 + t)`.
pub const DEFAULT_STEP_FACTOR: f64 = 0.02;
/// Tolerance on `|z| = 1` for [`digit_symbol`].
pub const UNIT_CIRCLE_TOLERANCE: f64 = 1e-12;

pub fn default_step(t: f64) -> f64 {
    DEFAULT_STEP_FACTOR / (1.0 + t)
}

pub fn check_step(step: f64, t: f64) -> Result<()> {
    let max_step = NYQUIST_GUARD / (1.0 + t);
    if !(step > 0.0) || step > max_step {
        return Err(Error::GridTooCoarse { step, max_step });
    }
    Ok(())
}

/// `Σ_{d} z^d` for `z` on the unit circle.
pub fn digit_symbol(digits: &[u64], z: Complex64) -> Result<Complex64> {
    let modulus = math::cabs(z);
    if math::abs(modulus - 1.0) > UNIT_CIRCLE_TOLERANCE {
        return Err(Error::Domain { modulus });
    }
    Ok(digits
        .iter()
        .map(|&d| z.powu(d as u32))
        .fold(Complex64::new(0.0, 0.0), |acc, w| acc + w))
}

/// `A^n(e^{-2πiy})` (or `B^n`) by the product formula.
pub fn level_symbol(ds: &DigitSystem, n: u32, side: Side, y: f64) -> Complex64 {
    let digits = ds.digits(side);
    let base = ds.base() as f64;
    let mut scale = 1.0;
    let mut product = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        scale /= base;
        let yj = y * scale;
        let factor = digits
            .iter()
            .map(|&d| math::cis_neg(d as f64 * yj))
            .fold(Complex64::new(0.0, 0.0), |acc, w| acc + w);
        product *= factor;
    }
    product
}

/// `ν̂^n[t](ξ)`.
pub fn nu_hat(ds: &DigitSystem, n: u32, t: f64, xi: f64) -> Complex64 {
    let scale = math::powf(ds.base() as f64, -(n as f64));
    level_symbol(ds, n, Side::A, xi) * level_symbol(ds, n, Side::B, t * xi) * scale
}

/// `sin(2πx)` with the argument reduced first, so integers give exactly 0.
fn sin_two_pi(x: f64) -> f64 {
    math::sin(2.0 * PI * (x - math::round(x)))
}

/// `χ(ξ) = (1 - e^{-2πiξ}) / (2πiξ)`, the transform of `1_{[0,1]}`.
pub fn chi(xi: f64) -> Complex64 {
    if xi == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let theta = 2.0 * PI * xi;
    let s_half = sin_two_pi(xi / 2.0);
    Complex64::new(sin_two_pi(xi) / theta, -2.0 * (s_half * s_half) / theta)
}

/// `min_{|ξ| ≤ radius} |χ(ξ)|` for `radius < 1`, i.e. the bound
/// `|χ_N(ξ)| ≥ c` on `|ξ| ≤ K^m` with `radius = K^{m-N}`.
pub fn chi_lower_bound(radius: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&radius) {
        return Err(Error::invalid("chi lower bound needs 0 <= radius < 1"));
    }
    Ok(math::cabs(chi(radius)))
}

/// `F̂^n[t](ξ) = ν̂^n(ξ) · χ(K^{-n} ξ)`.
pub fn f_hat(ds: &DigitSystem, n: u32, t: f64, xi: f64) -> Complex64 {
    let scale = math::powf(ds.base() as f64, -(n as f64));
    nu_hat(ds, n, t, xi) * chi(xi * scale)
}

/// Which transform a spectrum samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Transform {
    NuHat,
    FHat,
}

/// Samples on `lo = x_0 < … < x_k = hi` with uniform spacing `≤ step`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub xs: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl SpectralGrid {
    /// Node count for a requested maximal step.
    fn intervals(lo: f64, hi: f64, step: f64) -> usize {
        let raw = (hi - lo) / step;
        let k = libm::ceil(raw - 1e-9 * raw.max(1.0)) as usize;
        k.max(1)
    }

    pub fn sample<F>(lo: f64, hi: f64, step: f64, limits: &Limits, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Sync + Send,
    {
        if !(hi > lo) {
            return Err(Error::invalid("spectral grid needs hi > lo"));
        }
        let k = Self::intervals(lo, hi, step);
        if (k as u128 + 1) > limits.element_cap {
            return Err(Error::Resource {
                requested: k as u128 + 1,
                cap: limits.element_cap,
            });
        }
        let h = (hi - lo) / k as f64;
        let xs: Vec<f64> = (0..=k)
            .map(|i| if i == k { hi } else { lo + i as f64 * h })
            .collect();
        let values = math::map_indexed(xs.len(), |i| Ok(f(xs[i])))?;
        Ok(SpectralGrid {
            lo,
            hi,
            step: h,
            xs,
            values,
        })
    }

    /// Trapezoid rule for `∫ w(x)·|value|²` with per-node weights.
    fn trapezoid_sq(&self, mask: impl Fn(usize) -> bool) -> f64 {
        let last = self.values.len() - 1;
        let terms: Vec<f64> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if !mask(i) {
                    return 0.0;
                }
                let w = if i == 0 || i == last { 0.5 } else { 1.0 };
                w * v.norm_sqr()
            })
            .collect();
        math::pairwise_sum(&terms) * self.step
    }

    pub fn integral_sq(&self) -> f64 {
        self.trapezoid_sq(|_| true)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn spectrum(
    ds: &DigitSystem,
    n: u32,
    slope: &Slope,
    transform: Transform,
    lo: f64,
    hi: f64,
    step: f64,
    limits: &Limits,
) -> Result<SpectralGrid> {
    let t = slope.value();
    check_step(step, t)?;
    SpectralGrid::sample(lo, hi, step, limits, |xi| match transform {
        Transform::NuHat => nu_hat(ds, n, t, xi),
        Transform::FHat => f_hat(ds, n, t, xi),
    })
}

/// The frequency-band integrals of one slope.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandIntegrals {
    pub big_n: u32,
    pub n: u32,
    pub m: u32,
    pub t: f64,
    pub step: f64,
    pub samples: usize,
    /// `∫_{K^n}^{K^{m+n}} |ν̂^N|²`.
    pub i_total: f64,
    /// `∫_{K^n}^{K^{m+n}} |ν̂^n|²`.
    pub i1: f64,
    pub delta: Option<f64>,
    /// `∫ |ν̂^n|²` restricted to `Z_δ = {ξ : |ν̂_n^{m+n}(ξ)| ≤ K^{-2m} δ²}`.
    pub i2: Option<f64>,
    /// Fraction of the band inside `Z_δ`, by node count.
    pub z_delta_fraction: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
pub fn band_integrals(
    ds: &DigitSystem,
    big_n: u32,
    n: u32,
    m: u32,
    slope: &Slope,
    step: Option<f64>,
    delta: Option<f64>,
    limits: &Limits,
) -> Result<BandIntegrals> {
    if n < 1 || m < 1 || big_n < 1 {
        return Err(Error::invalid("band integrals need N, n, m >= 1"));
    }
    if let Some(d) = delta {
        if !(d > 0.0) {
            return Err(Error::invalid("delta must be positive"));
        }
    }
    let t = slope.value();
    let step = step.unwrap_or_else(|| default_step(t));
    check_step(step, t)?;
    let base = ds.base() as f64;
    let lo = math::powf(base, n as f64);
    let hi = math::powf(base, (n + m) as f64);
    let threshold = delta.map(|d| math::powf(base, -2.0 * m as f64) * d * d);
    let k_n = lo;
    let full = SpectralGrid::sample(lo, hi, step, limits, |xi| nu_hat(ds, big_n, t, xi))?;
    let coarse = SpectralGrid::sample(lo, hi, step, limits, |xi| nu_hat(ds, n, t, xi))?;
    let i_total = full.integral_sq();
    let i1 = coarse.integral_sq();
    let (i2, z_delta_fraction) = match threshold {
        Some(thr) => {
            let inside = math::map_indexed(coarse.xs.len(), |i| {
                Ok(math::cabs(nu_hat(ds, m, t, coarse.xs[i] / k_n)) <= thr)
            })?;
            let i2 = coarse.trapezoid_sq(|i| inside[i]);
            let frac = inside.iter().filter(|&&b| b).count() as f64 / inside.len() as f64;
            (Some(i2), Some(frac))
        }
        None => (None, None),
    };
    Ok(BandIntegrals {
        big_n,
        n,
        m,
        t,
        step: full.step,
        samples: full.xs.len(),
        i_total,
        i1,
        delta,
        i2,
        z_delta_fraction,
    })
}

/// `∫_{y0}^{y0+1} |D^n(e^{-2πi K^n y})|² dy` for one side. The integrand is a
/// trigonometric polynomial of degree below `K^n`, so the trapezoid rule
/// with more than `K^n` nodes is exact up to rounding.
pub fn unit_period_mean_sq(ds: &DigitSystem, n: u32, side: Side, y0: f64, limits: &Limits) -> Result<f64> {
    let kn = math::powf(ds.base() as f64, n as f64);
    let nodes = ((4.0 * kn) as usize).max(64);
    let grid = SpectralGrid::sample(y0, y0 + 1.0, 1.0 / nodes as f64, limits, |y| {
        level_symbol(ds, n, side, kn * y)
    })?;
    Ok(grid.integral_sq())
}

/// Numeric `∫|F̂^n|²` against the exact `∫ F_n²`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlancherelCheck {
    pub n: u32,
    pub q: u64,
    pub r: u64,
    pub xi_max: f64,
    /// `∫_{|ξ| ≤ Ξ} |F̂|²`.
    pub truncated: f64,
    /// `∫_{|ξ| > Ξ} |F̂|²`, from the periodic structure of `|ν̂|²`.
    pub tail: f64,
    pub corrected: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::as_str"))]
    pub exact: Rational,
    pub exact_f64: f64,
}

impl PlancherelCheck {
    pub fn relative_error(&self) -> f64 {
        math::abs(self.corrected - self.exact_f64) / self.exact_f64
    }
}

/// Integrates `|F̂^n|²` over `|ξ| ≤ Ξ` and adds the tail in closed form.
///
/// For `t = q/r` the atoms sit on `(r K^n)⁻¹ ℤ`, so
/// `g(ξ) = |ν̂(ξ)|² sin²(πξ/K^n)` has period `P = r K^n` and
/// `|F̂|² = g(ξ) K^{2n} / (πξ)²`. Summing the periods past `Ξ` gives
/// `∫_Ξ^∞ |F̂|² = K^{2n} / (π² P²) ∫_Ξ^{Ξ+P} g(ξ) ψ₁(ξ/P) dξ`
/// with the trigamma function `ψ₁`.
pub fn plancherel_check(
    ds: &DigitSystem,
    n: u32,
    q: u64,
    r: u64,
    xi_max: f64,
    step: Option<f64>,
    limits: &Limits,
) -> Result<PlancherelCheck> {
    let slope = Slope::rational(q, r)?;
    let (q, r) = slope.as_rational().unwrap();
    let t = slope.value();
    let step = step.unwrap_or_else(|| default_step(t));
    check_step(step, t)?;
    if !(xi_max > 0.0) {
        return Err(Error::invalid("xi_max must be positive"));
    }
    let kn = math::powf(ds.base() as f64, n as f64);
    let period = r as f64 * kn;
    let inner = SpectralGrid::sample(0.0, xi_max, step, limits, |xi| f_hat(ds, n, t, xi))?;
    // |F̂(-ξ)| = |F̂(ξ)| because F is real.
    let truncated = 2.0 * inner.integral_sq();
    let tail_grid = SpectralGrid::sample(xi_max, xi_max + period, step, limits, |xi| {
        let s = sin_two_pi(xi / (2.0 * kn));
        let g = nu_hat(ds, n, t, xi).norm_sqr() * s * s;
        let w = math::trigamma(xi / period);
        Complex64::new(math::sqrt(g * w), 0.0)
    })?;
    let tail = 2.0 * kn * kn / (PI * PI * period * period) * tail_grid.integral_sq();
    let exact = l2_norm_sq(ds, n, q, r, Window::Unit, limits)?;
    let exact_f64 = rational::to_f64(&exact);
    Ok(PlancherelCheck {
        n,
        q,
        r,
        xi_max,
        truncated,
        tail,
        corrected: truncated + tail,
        exact,
        exact_f64,
    })
}

/// Maximal hit intervals of `{y ∈ [0, K^m] : |D^m(e^{-2πiy})|·|other|^m ≤ δ}`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ZeroScan {
    pub m: u32,
    pub side: Side,
    pub delta: f64,
    pub step: f64,
    pub resolution: f64,
    pub hits: Vec<(f64, f64)>,
}

impl ZeroScan {
    pub fn hit_measure(&self) -> f64 {
        let lengths: Vec<f64> = self.hits.iter().map(|(a, b)| b - a).collect();
        math::pairwise_sum(&lengths)
    }
}

/// Default bisection resolution relative to the scan range `K^m`.
pub const DEFAULT_RELATIVE_RESOLUTION: f64 = 1e-6;

pub fn zero_set_scan(
    ds: &DigitSystem,
    m: u32,
    side: Side,
    delta: f64,
    step: Option<f64>,
    resolution: Option<f64>,
    limits: &Limits,
) -> Result<ZeroScan> {
    if m < 1 {
        return Err(Error::invalid("zero-set scan needs m >= 1"));
    }
    if !(delta > 0.0) {
        return Err(Error::invalid("delta must be positive"));
    }
    // Exponents of D^m lie in [0, 1): bandwidth 1.
    let step = step.unwrap_or(DEFAULT_STEP_FACTOR);
    check_step(step, 0.0)?;
    let hi = math::powf(ds.base() as f64, m as f64);
    let resolution = resolution.unwrap_or(DEFAULT_RELATIVE_RESOLUTION * hi);
    if !(resolution > 0.0) {
        return Err(Error::invalid("resolution must be positive"));
    }
    let weight = math::powf(ds.digits(side.other()).len() as f64, m as f64);
    let f = |y: f64| math::cabs(level_symbol(ds, m, side, y)) * weight;
    let grid = SpectralGrid::sample(0.0, hi, step, limits, |y| Complex64::new(f(y), 0.0))?;
    let xs = &grid.xs;
    let vals: Vec<f64> = grid.values.iter().map(|v| v.re).collect();
    let hit = |i: usize| vals[i] <= delta;
    let last = xs.len() - 1;

    // Shrinks [miss, hit] (either order) to the resolution; returns the
    // miss-side end so hit intervals err on the large side.
    let boundary = |mut miss: f64, mut inside: f64| -> f64 {
        while math::abs(inside - miss) > resolution {
            let mid = 0.5 * (miss + inside);
            if f(mid) <= delta {
                inside = mid;
            } else {
                miss = mid;
            }
        }
        miss
    };

    let mut hits: Vec<(f64, f64)> = Vec::new();
    let mut i = 0;
    while i <= last {
        if !hit(i) {
            i += 1;
            continue;
        }
        let start = i;
        while i < last && hit(i + 1) {
            i += 1;
        }
        let lo = if start == 0 { xs[0] } else { boundary(xs[start - 1], xs[start]) };
        let hi_end = if i == last { xs[last] } else { boundary(xs[i + 1], xs[i]) };
        hits.push((lo, hi_end));
        i += 1;
    }

    // Dips narrower than the grid: sampled local minima that miss.
    for i in 1..last {
        if hit(i) || vals[i] > vals[i - 1] || vals[i] > vals[i + 1] {
            continue;
        }
        let (y_min, f_min) = golden_min(&f, xs[i - 1], xs[i + 1], resolution * 1e-3);
        if f_min <= delta {
            let lo = boundary(xs[i - 1], y_min);
            let hi_end = boundary(xs[i + 1], y_min);
            hits.push((lo, hi_end));
        }
    }

    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(hits.len());
    for (lo, hi_end) in hits {
        match merged.last_mut() {
            Some(prev) if lo <= prev.1 + resolution => {
                if hi_end > prev.1 {
                    prev.1 = hi_end;
                }
            }
            _ => merged.push((lo, hi_end)),
        }
    }
    Ok(ZeroScan {
        m,
        side,
        delta,
        step: grid.step,
        resolution,
        hits: merged,
    })
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// A hit absorbed by the lattice neighbourhood `r M⁻¹ ℤ + (-ρ, ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatticeHit {
    pub lo: f64,
    pub hi: f64,
    pub center: f64,
    pub radius: f64,
}

/// Classification of an approximate zero set into a lattice part, at most
/// `r + q` short root intervals, boundary cells and a residue.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ZeroSetReport {
    pub m: u32,
    pub delta: f64,
    pub epsilon: f64,
    pub q: u64,
    pub r: u64,
    pub lattice_modulus: u64,
    pub resolution: f64,
    pub hits: Vec<(f64, f64)>,
    pub lattice_part: Vec<LatticeHit>,
    pub root_part: Vec<(f64, f64)>,
    /// Hits no wider than the resolution; left unclassified.
    pub boundary: Vec<(f64, f64)>,
    pub uncovered: Vec<(f64, f64)>,
    /// Smallest `c` with every lattice hit inside radius `c δ^{1-ε}`.
    pub c: f64,
    /// Smallest `C` with every root interval no longer than
    /// `C K^m δ^{ε/(r+q)}`.
    pub big_c: f64,
    pub root_components: usize,
    pub passed: bool,
}

/// `(r + q) / (1 + r + q)`.
pub fn default_epsilon(q: u64, r: u64) -> f64 {
    (r + q) as f64 / (1 + r + q) as f64
}

/// Sorts the hits of a scan into lattice part, root part, boundary cells and
/// residue, and fits the constants. Never fails on a residue; see
/// [`zero_set_structure_check`] for the strict form.
pub fn classify_zero_set(
    ds: &DigitSystem,
    scan: &ZeroScan,
    epsilon: f64,
    q: u64,
    r: u64,
    lattice_modulus: u64,
) -> Result<ZeroSetReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon must lie in (0, 1)"));
    }
    if r == 0 || lattice_modulus == 0 {
        return Err(Error::invalid("r and the lattice modulus must be positive"));
    }
    let spacing = r as f64 / lattice_modulus as f64;
    let range = math::powf(ds.base() as f64, scan.m as f64);
    let tol = scan.resolution;
    let mut lattice_part = Vec::new();
    let mut root_part = Vec::new();
    let mut boundary = Vec::new();
    let mut uncovered = Vec::new();
    for &(lo, hi) in &scan.hits {
        if hi - lo <= tol {
            boundary.push((lo, hi));
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let center = math::round(mid / spacing) * spacing;
        let radius = (hi - center).max(center - lo);
        if center >= lo - tol && center <= hi + tol && radius < 0.5 * spacing {
            lattice_part.push(LatticeHit {
                lo,
                hi,
                center,
                radius,
            });
        } else if hi - lo < spacing {
            root_part.push((lo, hi));
        } else {
            uncovered.push((lo, hi));
        }
    }
    let delta = scan.delta;
    let lattice_scale = math::powf(delta, 1.0 - epsilon);
    let root_scale = range * math::powf(delta, epsilon / (r + q) as f64);
    let c = lattice_part
        .iter()
        .map(|h| h.radius / lattice_scale)
        .fold(0.0, f64::max);
    let big_c = root_part
        .iter()
        .map(|(lo, hi)| (hi - lo) / root_scale)
        .fold(0.0, f64::max);
    let root_components = root_part.len();
    let passed = uncovered.is_empty() && root_components as u64 <= r + q;
    Ok(ZeroSetReport {
        m: scan.m,
        delta,
        epsilon,
        q,
        r,
        lattice_modulus,
        resolution: scan.resolution,
        hits: scan.hits.clone(),
        lattice_part,
        root_part,
        boundary,
        uncovered,
        c,
        big_c,
        root_components,
        passed,
    })
}

/// Scans and classifies; a nonempty residue is [`Error::NoCover`].
#[allow(clippy::too_many_arguments)]
pub fn zero_set_structure_check(
    ds: &DigitSystem,
    m: u32,
    delta: f64,
    epsilon: Option<f64>,
    q: u64,
    r: u64,
    lattice_modulus: u64,
    step: Option<f64>,
    resolution: Option<f64>,
    limits: &Limits,
) -> Result<ZeroSetReport> {
    let epsilon = epsilon.unwrap_or_else(|| default_epsilon(q, r));
    let scan = zero_set_scan(ds, m, Side::A, delta, step, resolution, limits)?;
    let report = classify_zero_set(ds, &scan, epsilon, q, r, lattice_modulus)?;
    if !report.uncovered.is_empty() {
        let length = report.uncovered.iter().map(|(a, b)| b - a).sum();
        return Err(Error::NoCover {
            uncovered: report.uncovered.len(),
            length,
        });
    }
    Ok(report)
}

/// Lattice moduli worth trying for a certificate period `cert_modulus` and
/// tile size `tile`: `cert_modulus / tile` first, then its small multiples
/// and the divisors of `cert_modulus`, ascending, without repeats.
pub fn candidate_lattice_moduli(cert_modulus: u64, tile: u64) -> Vec<u64> {
    let primary = (cert_modulus / tile.max(1)).max(1);
    let mut rest: Vec<u64> = (1..=cert_modulus)
        .filter(|&d| cert_modulus.is_multiple_of(d))
        .chain([2 * primary, 3 * primary])
        .filter(|&d| d != primary)
        .collect();
    rest.sort_unstable();
    rest.dedup();
    let mut out = alloc::vec![primary];
    out.extend(rest);
    out
}

/// Tries [`candidate_lattice_moduli`] in order and returns the first report
/// that passes, or the primary report if none does.
#[allow(clippy::too_many_arguments)]
pub fn zero_set_structure_search(
    ds: &DigitSystem,
    m: u32,
    delta: f64,
    epsilon: Option<f64>,
    q: u64,
    r: u64,
    cert_modulus: u64,
    tile: u64,
    step: Option<f64>,
    resolution: Option<f64>,
    limits: &Limits,
) -> Result<ZeroSetReport> {
    let epsilon = epsilon.unwrap_or_else(|| default_epsilon(q, r));
    let scan = zero_set_scan(ds, m, Side::A, delta, step, resolution, limits)?;
    let candidates = candidate_lattice_moduli(cert_modulus, tile);
    let mut first: Option<ZeroSetReport> = None;
    for modulus in candidates {
        let report = classify_zero_set(ds, &scan, epsilon, q, r, modulus)?;
        if report.passed {
            return Ok(report);
        }
        first.get_or_insert(report);
    }
    let report = first.expect("at least one candidate modulus");
    if !report.uncovered.is_empty() {
        let length = report.uncovered.iter().map(|(a, b)| b - a).sum();
        return Err(Error::NoCover {
            uncovered: report.uncovered.len(),
            length,
        });
    }
    Ok(report)
}

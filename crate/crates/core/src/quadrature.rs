//! Favard length by angular quadrature.
//!
//! `Fav(E_n) = ∫_0^π |π_θ(E_n)| dθ` is split into two quarter-ranges:
//! `[0, π/2]` for the system itself and `[0, π/2]` for its x-reflection
//! (which covers `θ ∈ [π/2, π]` through `θ' = π - θ`). The integrand is
//! bounded and piecewise Lipschitz, so the rules are low order (midpoint,
//! trapezoid) and accuracy comes from node doubling. The last difference
//! between refinements is reported as the error bound.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::digits::{DigitSystem, Limits};
use crate::interval::DEFAULT_COLLISION_TOLERANCE;
use crate::math;
use crate::projection::{
    farey_sequence, projection_length_at_angle, projection_measure,
    projection_parameter_length_f64,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum NodePlacement {
    /// Midpoint rule in `θ`.
    UniformTheta,
    /// Midpoint rule in `t = tan θ` on each eighth, with `dθ = dt / (1 + t²)`.
    UniformT,
    /// Trapezoid rule in `θ` on the Farey fractions of the given order; every
    /// nodal value is exact.
    Farey { order: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureSpec {
    /// Nodes per quarter-range `[0, π/2]` at the finest refinement.
    pub nodes: usize,
    pub placement: NodePlacement,
    /// Number of refinement levels; each halves the node count (or the
    /// Farey order) of the next.
    pub refinements: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes: 256,
            placement: NodePlacement::UniformTheta,
            refinements: 3,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 2 {
            return Err(Error::invalid("quadrature needs at least 2 nodes"));
        }
        if let NodePlacement::Farey { order } = self.placement {
            if order < 1 {
                return Err(Error::invalid("Farey order must be at least 1"));
            }
        }
        if self.refinements < 1 {
            return Err(Error::invalid("at least one refinement level is required"));
        }
        Ok(())
    }

    /// Node count (or Farey order) at each refinement level, coarsest first.
    fn schedule(&self) -> Vec<u64> {
        let finest = match self.placement {
            NodePlacement::Farey { order } => order,
            _ => self.nodes as u64,
        };
        let floor = match self.placement {
            NodePlacement::Farey { .. } => 1,
            _ => 2,
        };
        (0..self.refinements)
            .rev()
            .map(|shift| (finest >> shift.min(63)).max(floor))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RefinementStep {
    /// Nodes per quarter-range actually used.
    pub nodes: usize,
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FavardEstimate {
    pub n: u32,
    pub steps: Vec<RefinementStep>,
    /// Value at the finest refinement.
    pub estimate: f64,
    /// `|finest - previous|`, absent with a single refinement.
    pub error_bound: Option<f64>,
}

/// `∫_0^{π/2} |π_θ(E_n)| dθ` for one system.
fn quarter_integral(
    ds: &DigitSystem,
    n: u32,
    placement: NodePlacement,
    size: u64,
    limits: &Limits,
) -> Result<(f64, usize)> {
    match placement {
        NodePlacement::UniformTheta => {
            let count = size as usize;
            let h = FRAC_PI_2 / count as f64;
            let values = math::map_indexed(count, |i| {
                projection_length_at_angle(ds, n, (i as f64 + 0.5) * h, limits)
            })?;
            Ok((math::pairwise_sum(&values) * h, count))
        }
        NodePlacement::UniformT => {
            let half = (size as usize).div_ceil(2);
            let h = 1.0 / half as f64;
            let swapped = ds.swapped();
            let values = math::map_indexed(2 * half, |i| {
                let (system, j) = if i < half { (ds, i) } else { (&swapped, i - half) };
                let t = (j as f64 + 0.5) * h;
                let length = projection_parameter_length_f64(
                    system,
                    n,
                    t,
                    DEFAULT_COLLISION_TOLERANCE,
                    limits,
                )?;
                // cos θ · dθ/dt = (1 + t²)^{-3/2}.
                let s = 1.0 + t * t;
                Ok(length / (s * math::sqrt(s)))
            })?;
            Ok((math::pairwise_sum(&values) * h, 2 * half))
        }
        NodePlacement::Farey { .. } => {
            let fractions = farey_sequence(size);
            let swapped = ds.swapped();
            let m = fractions.len();
            let values = math::map_indexed(2 * m, |i| {
                let (system, (q, r)) = if i < m {
                    (ds, fractions[i])
                } else {
                    (&swapped, fractions[i - m])
                };
                Ok(projection_measure(system, n, q, r, limits)?.value)
            })?;
            let angles: Vec<f64> = fractions
                .iter()
                .map(|&(q, r)| math::atan2(q as f64, r as f64))
                .collect();
            let mut pieces = Vec::with_capacity(2 * (m - 1));
            for half in 0..2 {
                let vals = &values[half * m..(half + 1) * m];
                for k in 0..m - 1 {
                    pieces.push(0.5 * (vals[k] + vals[k + 1]) * (angles[k + 1] - angles[k]));
                }
            }
            // Both halves together span [0, π/2]; the θ = π/4 node is shared.
            debug_assert!((angles[m - 1] - FRAC_PI_4).abs() < 1e-15);
            Ok((math::pairwise_sum(&pieces), 2 * m - 1))
        }
    }
}

pub fn favard_length(
    ds: &DigitSystem,
    n: u32,
    spec: &QuadratureSpec,
    limits: &Limits,
) -> Result<FavardEstimate> {
    spec.validate()?;
    limits.check_power(ds.base(), n)?;
    let reflected = ds.reflected_x();
    let mut steps = Vec::with_capacity(spec.refinements as usize);
    for size in spec.schedule() {
        let (right, nodes) = quarter_integral(ds, n, spec.placement, size, limits)?;
        let (left, _) = quarter_integral(&reflected, n, spec.placement, size, limits)?;
        steps.push(RefinementStep {
            nodes,
            estimate: right + left,
        });
    }
    let estimate = steps.last().map(|s| s.estimate).unwrap_or(f64::NAN);
    let error_bound = (steps.len() >= 2)
        .then(|| math::abs(steps[steps.len() - 1].estimate - steps[steps.len() - 2].estimate));
    Ok(FavardEstimate {
        n,
        steps,
        estimate,
        error_bound,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecayRow {
    pub n: u32,
    pub favard: f64,
    pub error_bound: Option<f64>,
    pub n_times_favard: f64,
    pub inverse_n: f64,
    pub log_n_over_n: f64,
    /// `n^{-1/p}` when an admissible exponent `p` was supplied.
    pub power_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecayReport {
    pub estimates: Vec<FavardEstimate>,
    pub rows: Vec<DecayRow>,
    /// `e` in the least-squares fit `log Fav ≈ log C - e log n`.
    pub fitted_exponent: f64,
    pub fitted_constant: f64,
    pub nonincreasing: bool,
    /// `min_n n·Fav(E_n)` over the computed range.
    pub min_n_times_favard: f64,
    pub lower_bound_pass: bool,
}

pub fn decay_experiment(
    ds: &DigitSystem,
    n_max: u32,
    spec: &QuadratureSpec,
    p: Option<f64>,
    limits: &Limits,
) -> Result<DecayReport> {
    if n_max < 2 {
        return Err(Error::invalid("a decay fit needs n_max >= 2"));
    }
    let estimates = (1..=n_max)
        .map(|n| favard_length(ds, n, spec, limits))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<DecayRow> = estimates
        .iter()
        .map(|e| {
            let nf = e.n as f64;
            DecayRow {
                n: e.n,
                favard: e.estimate,
                error_bound: e.error_bound,
                n_times_favard: nf * e.estimate,
                inverse_n: 1.0 / nf,
                log_n_over_n: math::ln(nf) / nf,
                power_bound: p.map(|p| math::powf(nf, -1.0 / p)),
            }
        })
        .collect();
    let xs: Vec<f64> = rows.iter().map(|r| math::ln(r.n as f64)).collect();
    let ys: Vec<f64> = rows.iter().map(|r| math::ln(r.favard)).collect();
    let (slope, intercept) = least_squares(&xs, &ys);
    let nonincreasing = rows.windows(2).all(|w| w[1].favard <= w[0].favard);
    let min_n_times_favard = rows
        .iter()
        .map(|r| r.n_times_favard)
        .fold(f64::INFINITY, f64::min);
    Ok(DecayReport {
        estimates,
        rows,
        fitted_exponent: -slope,
        fitted_constant: libm::exp(intercept),
        nonincreasing,
        min_n_times_favard,
        lower_bound_pass: min_n_times_favard > 0.0,
    })
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = math::pairwise_sum(xs) / n;
    let my = math::pairwise_sum(ys) / n;
    let sxy: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).collect();
    let sxx: Vec<f64> = xs.iter().map(|x| (x - mx) * (x - mx)).collect();
    let slope = math::pairwise_sum(&sxy) / math::pairwise_sum(&sxx);
    (slope, my - slope * mx)
}

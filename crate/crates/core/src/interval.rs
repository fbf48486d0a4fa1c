//! Unions of closed intervals.
//!
//! All three flavours keep their intervals sorted and disjoint, with
//! touching intervals merged, so two equal sets have equal representations.
//! [`LatticeUnion`] is the workhorse for projections: every endpoint is an
//! integer over one shared denominator, and the sweep never allocates a
//! rational.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::math;
use crate::rational::Rational;
use crate::{Error, Result};

/// Sorted, disjoint closed intervals with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    intervals: Vec<(Rational, Rational)>,
    measure: Rational,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion {
            intervals: Vec::new(),
            measure: Rational::zero(),
        }
    }

    /// Sweeps arbitrary intervals into canonical form. Each input must have
    /// `lo < hi`.
    pub fn from_intervals(mut raw: Vec<(Rational, Rational)>) -> Result<Self> {
        if raw.iter().any(|(lo, hi)| lo >= hi) {
            return Err(Error::invalid("interval with lo >= hi"));
        }
        raw.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        let mut intervals: Vec<(Rational, Rational)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match intervals.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => intervals.push((lo, hi)),
            }
        }
        let measure = intervals
            .iter()
            .fold(Rational::zero(), |acc, (lo, hi)| acc + (hi - lo));
        Ok(IntervalUnion { intervals, measure })
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn measure(&self) -> &Rational {
        &self.measure
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.intervals.partition_point(|(lo, _)| lo <= x);
        idx > 0 && *x <= self.intervals[idx - 1].1
    }
}

/// Sorted, disjoint closed intervals `[lo/d, hi/d]` sharing the denominator
/// `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeUnion {
    denominator: u128,
    intervals: Vec<(u128, u128)>,
    /// Sum of `hi - lo`, in units of `1/d`.
    length: u128,
}

impl LatticeUnion {
    /// Union of `[x, x + width]` over `points` (any order, repeats allowed).
    pub fn from_points(mut points: Vec<u128>, width: u128, denominator: u128) -> Self {
        points.sort_unstable();
        points.dedup();
        Self::from_sorted_points(&points, width, denominator)
    }

    /// Same as [`Self::from_points`] for points already sorted ascending.
    pub fn from_sorted_points(points: &[u128], width: u128, denominator: u128) -> Self {
        let mut intervals: Vec<(u128, u128)> = Vec::new();
        let mut length = 0u128;
        for &x in points {
            let end = x + width;
            match intervals.last_mut() {
                Some(last) if x <= last.1 => {
                    if end > last.1 {
                        length += end - last.1;
                        last.1 = end;
                    }
                }
                _ => {
                    if width > 0 {
                        intervals.push((x, end));
                        length += width;
                    }
                }
            }
        }
        LatticeUnion {
            denominator,
            intervals,
            length,
        }
    }

    pub fn denominator(&self) -> u128 {
        self.denominator
    }

    pub fn intervals(&self) -> &[(u128, u128)] {
        &self.intervals
    }

    /// Total length in units of `1/denominator`.
    pub fn length_units(&self) -> u128 {
        self.length
    }

    pub fn measure(&self) -> Rational {
        Rational::new(
            BigInt::from(BigUint::from(self.length)),
            BigInt::from(BigUint::from(self.denominator)),
        )
    }

    pub fn to_interval_union(&self) -> IntervalUnion {
        let d = BigInt::from(self.denominator);
        let intervals = self
            .intervals
            .iter()
            .map(|&(lo, hi)| {
                (
                    Rational::new(BigInt::from(lo), d.clone()),
                    Rational::new(BigInt::from(hi), d.clone()),
                )
            })
            .collect();
        IntervalUnion {
            intervals,
            measure: self.measure(),
        }
    }
}

/// Float counterpart used for irrational slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatUnion {
    intervals: Vec<(f64, f64)>,
    measure: f64,
}

/// Default gap below which two float intervals count as touching.
pub const DEFAULT_COLLISION_TOLERANCE: f64 = 1e-12;

impl FloatUnion {
    /// Union of `[x, x + width]` over `points`; gaps of at most `tolerance`
    /// are closed.
    pub fn from_points(mut points: Vec<f64>, width: f64, tolerance: f64) -> Self {
        points.sort_unstable_by(f64::total_cmp);
        let mut intervals: Vec<(f64, f64)> = Vec::new();
        for x in points {
            let end = x + width;
            match intervals.last_mut() {
                Some(last) if x <= last.1 + tolerance => {
                    if end > last.1 {
                        last.1 = end;
                    }
                }
                _ => intervals.push((x, end)),
            }
        }
        let lengths: Vec<f64> = intervals.iter().map(|(lo, hi)| hi - lo).collect();
        let measure = math::pairwise_sum(&lengths);
        FloatUnion { intervals, measure }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    #[test]
    fn merges_touching_and_overlapping() {
        let u = IntervalUnion::from_intervals(vec![
            (ratio(3, 4), ratio(5, 4)),
            (ratio(0, 1), ratio(1, 2)),
            (ratio(1, 2), ratio(5, 8)),
            (ratio(1, 1), ratio(3, 2)),
        ])
        .unwrap();
        assert_eq!(
            u.intervals(),
            &[(ratio(0, 1), ratio(5, 8)), (ratio(3, 4), ratio(3, 2))]
        );
        assert_eq!(u.measure(), &ratio(11, 8));
        assert!(u.contains(&ratio(5, 8)));
        assert!(!u.contains(&ratio(2, 3)));
        assert!(u.contains(&ratio(3, 2)));
        assert!(!u.contains(&ratio(-1, 2)));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(IntervalUnion::from_intervals(vec![(ratio(1, 2), ratio(1, 2))]).is_err());
        assert!(IntervalUnion::from_intervals(vec![]).unwrap().is_empty());
    }

    #[test]
    fn lattice_union_matches_rational_sweep() {
        // t = 1 four-corner, level 1: points {0,3,3,6}/4 with width 2/4.
        let u = LatticeUnion::from_points(vec![0, 3, 3, 6], 2, 4);
        assert_eq!(u.intervals(), &[(0, 2), (3, 5), (6, 8)]);
        assert_eq!(u.measure(), ratio(3, 2));
        let r = u.to_interval_union();
        assert_eq!(r.measure(), &ratio(3, 2));
        let swept = IntervalUnion::from_intervals(
            [0, 3, 3, 6]
                .iter()
                .map(|&x| (ratio(x, 4), ratio(x + 2, 4)))
                .collect(),
        )
        .unwrap();
        assert_eq!(swept, r);
    }

    #[test]
    fn float_union_tolerance() {
        let u = FloatUnion::from_points(vec![1.0 + 1e-13, 0.0], 1.0, 1e-12);
        assert_eq!(u.intervals().len(), 1);
        let u = FloatUnion::from_points(vec![1.0 + 1e-9, 0.0], 1.0, 1e-12);
        assert_eq!(u.intervals().len(), 2);
        assert!((u.measure() - 2.0).abs() < 1e-15);
    }
}

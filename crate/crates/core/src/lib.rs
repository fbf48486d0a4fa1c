//! Computable core of the Favard-length analysis of product Cantor sets.
//!
//! A product Cantor set is generated by a [`DigitSystem`] `(K, A, B)` with
//! `|A|·|B| = K`: the unit square is cut into `K²` cells and the cells whose
//! lower-left corner lies in `K⁻¹(A × B)` are kept, recursively. The `n`-th
//! iteration `E_n` is a union of `K^n` squares of side `K^{-n}`.
//!
//! The crate is `no_std` (with `alloc`). Everything that only needs exact
//! integer or rational arithmetic stays exact:
//!
//! * [`digits`]: digit systems, dimensions and base-`K` level sets.
//! * [`projection`]: exact projections `π_θ(E_n)` for rational slopes,
//!   counting functions and their `L²` norms.
//! * [`quadrature`]: Favard length by angular quadrature, decay fits.
//! * [`spectral`]: Fourier transforms of the projected measures, the
//!   frequency-band integrals and approximate zero-set scans.
//! * [`tiling`]: complementing sets modulo `M`, direction analysis and the
//!   exponent bookkeeping for the decay rate.
//!
//! The `parallel` feature (on by default) evaluates quadrature nodes and
//! spectral grids on a rayon pool. Summation order is fixed either way, so results
//! are bit-identical with and without it.
#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` is used on purpose: it rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod digits;
mod error;
pub mod interval;
mod math;
pub mod projection;
pub mod quadrature;
pub mod rational;
pub mod spectral;
pub mod tiling;

pub use digits::{DigitSystem, Exponents, LevelSet, Limits, LogRatio, Side};
pub use error::{Error, Result};
pub use interval::{FloatUnion, IntervalUnion, LatticeUnion};
pub use projection::{ProjectedMeasure, Slope, StepFunction, Window};
pub use rational::Rational;

//! Locating the nearest singular parameter of a polynomial homotopy from
//! Taylor data at a regular solution.
//!
//! The pipeline: track a path to a regular point, sample it on a circle,
//! recover Taylor coefficients by an inverse DFT, and extrapolate the ratios
//! `c_n / c_{n+1}` with a Richardson table. Everything is generic over the
//! real scalar, so the same code runs in `f64` and in double-double.

// NaN must fail these checks, hence `!(x > 0.0)` rather than `x <= 0.0`
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fourier;
pub mod linalg;
pub mod monomial;
pub mod polysys;
pub mod radar;
pub mod scalars;
pub mod series;
pub mod tracker;

pub use error::{Error, Result};
pub use scalars::{Complex, DoubleDouble, Real, C64};

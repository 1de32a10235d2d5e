//! Exact and asymptotic analysis of the partition crank statistic.
//!
//! The crank of a partition is its largest part when no part equals 1, and
//! otherwise the number of parts larger than the number of ones minus the
//! number of ones. Writing `M_k(m, n)` for the coefficients of
//!
//! ```text
//!   C_k(zeta; q) = (q; q)_inf^(2-k) / ((zeta q; q)_inf (zeta^-1 q; q)_inf),
//! ```
//!
//! the crate computes `M_k(m, n)` exactly by three independent routes,
//! evaluates the `(beta_k/4) sech^2(beta_k m / 2) p_k(n)` asymptotic profile,
//! and numerically drives a Wright-style circle-method decomposition of the
//! coefficient integral, cross-checking every analytic layer against the
//! exact one.
//!
//! Modules:
//!
//! * [`exact`] — big-integer partitions, cranks, q-series, cached tables;
//! * [`numerics`] — arbitrary-precision complex arithmetic and quadrature;
//! * [`special`] — eta, theta, Euler polynomials, Bessel and incomplete
//!   gamma at configurable precision;
//! * [`asymptotics`] — the sech-squared main term, validity ranges, and
//!   comparison tables;
//! * [`circle`] — contour evaluation of the generating function: major and
//!   minor arcs, saddle-type integrals, and loop-integral Bessel recovery;
//! * [`guide`] — the rendered handbook (also runs as doc-tests).

pub mod asymptotics;
pub mod circle;
pub mod config;
pub mod error;
pub mod exact;
pub mod guide;
pub mod numerics;
pub mod special;

pub use config::{OutputFormat, RunConfig, Tolerances};
pub use error::{Error, Result};

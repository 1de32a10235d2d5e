//! Arbitrary-precision numeric kernel: reals (MPFR), a complex type built
//! on them, and Gauss-Legendre quadrature with node-doubling control.

pub mod complex;
pub mod prec;
pub mod quadrature;

pub use complex::Cplx;
pub use prec::{Precision, DEFAULT_BITS, MIN_BITS};
pub use quadrature::{
    gl_rule, integrate, integrate_mesh, integrate_segment, GlRule, QuadOpts, QuadValue, Quadrature,
};

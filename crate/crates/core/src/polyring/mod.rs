//! Exact sparse bivariate polynomials over the Gaussian rationals, in either
//! the `(x, y)` or the `(z, z̄)` basis.

mod gauss;
pub mod interchange;
mod poly;
mod real;

pub use gauss::{format_rational, parse_rational, rat, rat_to_f64, GaussianRational};
pub use poly::{Axis, Basis, ExactPoly, Monomial};
pub use real::{horner_derivs, RealPoly};

//! Exact computer algebra for lump solutions of the Boussinesq (KP-I
//! travelling-wave) equation: Hirota bilinear residuals of polynomial τ
//! functions, the even-solution obstruction recursions, Calogero–Moser pole
//! checks and the closed-form spectral data of the Lax operator.

pub mod catalog;
pub mod classifier;
pub mod cm;
pub mod error;
pub mod hirota;
pub mod lax;
pub mod polyring;

pub use error::{Error, Result};

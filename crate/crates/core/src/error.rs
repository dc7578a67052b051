use thiserror::Error;

use crate::polyring::{Basis, ExactPoly};

#[derive(Debug, Error)]
pub enum Error {
    #[error("basis mismatch: left operand is {left}, right operand is {right}")]
    BasisMismatch { left: Basis, right: Basis },

    #[error("division is not exact; remainder has {} term(s)", .remainder.len())]
    InexactDivision { remainder: Box<ExactPoly> },

    #[error("odd exponent x^{x_exp} y^{y_exp} cannot be evaluated from squares")]
    OddExponent { x_exp: u32, y_exp: u32 },

    #[error("bilinear form term D^{a} D^{b} has odd total order")]
    OddOrder { a: u32, b: u32 },

    #[error("bilinear form term D^{a} D^{b} has zero weight")]
    ZeroWeight { a: u32, b: u32 },

    #[error("unknown bilinear form preset `{0}`")]
    UnknownForm(String),

    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),

    #[error("unknown tau id `{0}`")]
    UnknownTau(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vanishing coefficient of the unknown at n={n}, step {step}")]
    DegenerateStep { n: u64, step: u64 },

    #[error("J and sigma routes disagree at n={n}")]
    RouteDisagreement { n: u64 },

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("malformed polynomial document: {0}")]
    Format(String),

    #[error("poles {i} and {j} coincide (distance {distance:e})")]
    CoincidentPoles { i: usize, j: usize, distance: f64 },

    #[error("root iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("singular spectral point: {0} vanishes")]
    SingularPoint(&'static str),

    #[error("root pairing across y values is ambiguous: {0}")]
    AmbiguousPairing(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by the physics and numerics layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: separation must be positive, got {0} m")]
    InvalidGeometry(f64),

    #[error("invalid temperature: must be non-negative, got {0} K")]
    InvalidTemperature(f64),

    #[error("invalid atom: {0}")]
    InvalidAtom(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular point: y = zeta = 0")]
    SingularPoint,

    #[error("light-cone point y = zeta = {zeta} has no reflection coefficient")]
    LightCone { zeta: f64 },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("negative square-root argument {arg:e} at u = {u}")]
    BranchViolation { u: f64, arg: f64 },

    #[error("quadrature did not converge: value {value:e}, error estimate {error:e} after {evaluations} evaluations")]
    Quadrature {
        value: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("series truncated after {terms} terms: partial value {value:e}, tail estimate {tail:e}")]
    Truncation { value: f64, tail: f64, terms: usize },

    #[error("alternating series tail is not monotone near term {0}")]
    NonMonotoneTail(u64),

    #[error("finite differences did not settle; best estimate {best:e}")]
    Derivative { best: f64 },

    #[error("temperature is zero; use the zero-temperature energy instead")]
    ZeroTemperature,

    #[error("usage: {0}")]
    Usage(String),

    #[error("experimental feature not enabled: {0}")]
    Experimental(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

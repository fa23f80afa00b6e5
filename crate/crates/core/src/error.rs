use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("radial distance argument {value} lies below 1 beyond the clamp window")]
    ArcchDomain { value: f64 },

    #[error("quadrature did not converge: error estimate {error:.3e} after {subdivisions} subdivisions (tolerance {tolerance:.3e})")]
    NonConvergence { error: f64, tolerance: f64, subdivisions: usize },

    #[error("integrand violates its decay hint near v = {at}")]
    DecayViolation { at: f64 },

    #[error("integral appears divergent: partial sums still growing at R = {at}")]
    Divergence { at: f64 },

    #[error("kernel is singular at the identity (R = 0)")]
    SingularAtIdentity,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::invalid(name, reason)
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("matrix is not positive definite (pivot {pivot} of {size}); {advice}")]
    NotPositiveDefinite {
        pivot: usize,
        size: usize,
        advice: String,
    },
    #[error("{routine} did not converge within {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },
    #[error("no plateau of stability found over {samples} samples; try a larger basis size")]
    NoPlateau { samples: usize },
}

pub type Result<T> = std::result::Result<T, SpectraError>;

pub(crate) fn domain(msg: impl Into<String>) -> SpectraError {
    SpectraError::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> SpectraError {
    SpectraError::InvalidParameter(msg.into())
}

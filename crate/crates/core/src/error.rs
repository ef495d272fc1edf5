use thiserror::Error;

/// Errors raised by the linear-algebra layer, the cloner solver and the
/// analysis helpers built on top of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid local dimension {0} (must be at least 2)")]
    InvalidDimension(usize),

    #[error("index {index} out of range for dimension {dim}")]
    InvalidIndex { index: usize, dim: usize },

    #[error("invalid site selection: {0}")]
    InvalidSites(String),

    #[error("register too large: {0}")]
    TooLarge(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("invalid clone weights: {0}")]
    InvalidWeights(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible singlet-fraction profile: {0}")]
    InfeasibleProfile(String),

    #[error("invalid density operator: {0}")]
    InvalidState(String),

    #[error("unsupported local dimension {0}")]
    UnsupportedDimension(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

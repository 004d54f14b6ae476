use thiserror::Error;

/// Errors raised by the scheduling library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SinrError {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("fading violation: path-loss exponent {alpha} must exceed metric dimension {dim}")]
    FadingViolation { alpha: f64, dim: u32 },

    #[error("links {0} and {1} are colocated (zero interference distance)")]
    Colocation(u64, u64),

    #[error("degenerate bound: {0}")]
    DegenerateBound(String),

    #[error("oracle scale exceeded: {size} elements, limit {limit}")]
    OracleScale { size: usize, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid property: {0}")]
    InvalidProperty(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("numeric range: {0}")]
    NumericRange(String),

    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
}

pub type Result<T, E = SinrError> = std::result::Result<T, E>;

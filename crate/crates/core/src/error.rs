use thiserror::Error;

/// Errors raised by the polynomial, root and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,

    #[error("polynomial is not real-rooted")]
    NotRealRooted,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("polynomial is not standard (leading coefficient must be positive)")]
    NotStandard,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("enumeration of size {size} exceeds the configured guard {limit}")]
    ResourceLimit { size: usize, limit: usize },

    /// Two routes that must agree on the same value did not. This is a bug,
    /// never a property of the input.
    #[error("internal consistency check failed: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;

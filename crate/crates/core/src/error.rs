use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} exceeds the configured bound {dmax}")]
    BoundExceeded { degree: i64, dmax: i64 },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: i64, got: i64 },

    #[error("mu is undefined on the diagonal")]
    MuDiagonal,

    #[error("weight cap {requested} exceeds the safety cap {cap}")]
    WeightCap { requested: u64, cap: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("truncation level {m} is too small: {reason}")]
    Truncation { m: u32, reason: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

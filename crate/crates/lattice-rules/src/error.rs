//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An enumeration or search would exceed its configured budget.
    #[error("resource limit: {what} requires {required} but the cap is {cap}")]
    ResourceLimit {
        what: String,
        required: u128,
        cap: u128,
    },

    /// A real-number computation ran out of certified precision.
    /// `last_certain` is the index of the last result that is still provably correct.
    #[error("precision exhausted after index {last_certain}")]
    PrecisionExhausted { last_certain: usize },

    /// Not enough data points to perform a fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// An internal invariant failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

impl LatticeError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        LatticeError::InvalidArgument(msg.into())
    }

    /// Process exit code used by the CLI for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            LatticeError::InvalidArgument(_) => 2,
            LatticeError::ResourceLimit { .. } => 3,
            _ => 1,
        }
    }
}

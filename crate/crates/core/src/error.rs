use thiserror::Error;

/// Errors raised by the evidence algebra and the Monte-Carlo engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The two pieces of evidence are (numerically) fully contradictory.
    #[error("contradictory evidence: {0}")]
    ContradictoryEvidence(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix `{0}` is not positive definite")]
    NotPositiveDefinite(String),

    #[error("trailing precision block is singular: {0}")]
    SingularBlock(String),

    /// Rejection sampling would almost never accept a draw.
    #[error("rejection sampling infeasible: acceptance probability {0:e}")]
    PracticalRejection(f64),

    /// Malformed input document; the message names the offending field.
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is valid but too large for the requested (brute-force) route.
    #[error("scale error: {0}")]
    Scale(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// Two routes that must agree did not. This always indicates a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn scale(msg: impl Into<String>) -> Self {
        Error::Scale(msg.into())
    }
}

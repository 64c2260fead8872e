use thiserror::Error;

/// Errors raised by the optimiser, problems and indicators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An operation was called with arguments that violate its contract.
    #[error("usage error: {0}")]
    Usage(String),
    /// A problem, algorithm or experiment was configured with invalid values.
    #[error("configuration error: {0}")]
    Config(String),
    /// A required data file is missing or malformed.
    #[error("data error: {0}")]
    Data(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

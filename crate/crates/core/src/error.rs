use thiserror::Error;

/// Errors raised by pricing, forecasting, fabric and scenario operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("no data: {0}")]
    NoData(String),
    #[error("instance `{id}` already registered for service `{service}`")]
    AlreadyRegistered { service: String, id: String },
    #[error("instance `{id}` not found for service `{service}`")]
    NotFound { service: String, id: String },
    #[error("no instance available for service `{0}`")]
    NoInstanceAvailable(String),
    #[error("validation error at `{key}`: {message}")]
    Validation { key: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn validation(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            key: key.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An exhaustive computation would exceed the configured cap.
    #[error("size limit exceeded: {what} = {size} is above the cap {cap}")]
    SizeLimit { what: &'static str, size: String, cap: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// One-line notation could not be parsed; `column` is 1-based.
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

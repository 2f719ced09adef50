use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments violate a documented precondition (dimensions, ranges, signs).
    #[error("invalid input: {0}")]
    Input(String),

    /// An exact combinatorial search was asked to run beyond its size cap.
    #[error("instance exceeds capability: {0}")]
    Capability(String),

    /// Malformed CSV or JSON text.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

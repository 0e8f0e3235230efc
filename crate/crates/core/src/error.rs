use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cost domain error: {0}")]
    Domain(String),

    #[error("unsupported dimension {dim}: {op} requires {required}")]
    UnsupportedDimension {
        op: &'static str,
        dim: usize,
        required: &'static str,
    },

    #[error("instance too large: n = {n} exceeds the limit of {max} for {op}")]
    InstanceTooLarge {
        op: &'static str,
        n: usize,
        max: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible rings: {left} and {right}")]
    RingMismatch { left: String, right: String },

    #[error("{value} is not invertible in {ring}")]
    NotInvertible { value: String, ring: String },

    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("resource guard: {what} would need {projected} (limit {limit})")]
    ResourceGuard {
        what: String,
        projected: u128,
        limit: u128,
    },

    #[error("homology over {0} is not supported; use Z or a field")]
    UnsupportedRing(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("diagram is not a permutation diagram: {0}")]
    NotPermutation(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

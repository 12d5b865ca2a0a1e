use thiserror::Error;

/// Errors raised by the numerical and exact routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient precision: {required} digits required, {available} available")]
    InsufficientPrecision { required: u64, available: u64 },

    #[error("quadrature did not converge: {0}")]
    Convergence(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("bernoulli cache line {line}: {message}")]
    CacheParse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

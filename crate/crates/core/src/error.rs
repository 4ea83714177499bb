use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad configuration or inconsistent arguments.
    Usage,
    /// The mathematics is undefined at the requested point.
    Math,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {what} vanishes at {at}")]
    Pole { what: &'static str, at: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("trajectory escaped beyond 1e100 at index {index}")]
    Escape { index: usize },

    #[error("non-finite value produced at index {index}")]
    NonFinite { index: usize },

    #[error("orbit collapsed onto {value} at step {index}; choose a different seed")]
    Degenerate { index: usize, value: f64 },

    #[error("trajectories are not sampled on the same index set: {0}")]
    Mismatch(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Usage(_) | Error::Config(_) | Error::Mismatch(_) => ErrorKind::Usage,
            Error::Pole { .. }
            | Error::Domain(_)
            | Error::Escape { .. }
            | Error::NonFinite { .. }
            | Error::Degenerate { .. } => ErrorKind::Math,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

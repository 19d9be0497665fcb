use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} did not converge")]
    NoConvergence(String),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("trial {trial}: {source}")]
    Trial {
        trial: u64,
        #[source]
        source: Box<Error>,
    },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

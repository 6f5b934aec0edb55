use thiserror::Error;

/// Errors raised by the linear-algebra layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("capacity exceeded: dimension {dim} is above the {cap}-dimensional limit")]
    Capacity { dim: usize, cap: usize },
    #[error("unknown or repeated qubit label `{0}`")]
    Label(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

use thiserror::Error;

/// Errors raised by the model, the solvers, the generators and the I/O layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search space of {estimate} exceeds the cap of {cap}")]
    Capacity { estimate: u128, cap: u128 },
    #[error("time budget exhausted")]
    Timeout,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("corrupt certificate: {0}")]
    CorruptCertificate(String),
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

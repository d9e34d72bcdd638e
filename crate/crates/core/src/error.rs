use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Caller supplied an argument outside the operation's domain.
    #[error("invalid argument: {0}")]
    Usage(String),

    /// A numerical routine could not meet its tolerance. The best estimate
    /// reached before giving up is attached.
    #[error("{message} (best estimate {estimate:e}, error estimate {error_estimate:e})")]
    Numerical {
        message: String,
        estimate: f64,
        error_estimate: f64,
    },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The caller combined otherwise valid inputs in an unsupported way.
    #[error("usage error: {0}")]
    Usage(String),
    /// Invalid quadrature or summation settings.
    #[error("configuration error: {0}")]
    Config(String),
    /// A sum, integral or extrapolation failed to converge.
    #[error("numeric failure: {message} (partial result {partial:e}, tail estimate {tail:e})")]
    Numeric {
        message: String,
        partial: f64,
        tail: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>, partial: f64, tail: f64) -> Self {
        Error::Numeric {
            message: msg.into(),
            partial,
            tail,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

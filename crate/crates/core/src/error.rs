use thiserror::Error;

/// Errors across the crate. `Usage` covers malformed inputs and violated
/// call preconditions; `Capacity` is a refusal to start work that exceeds a
/// documented size cap.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("operands belong to different field specs ({0} vs {1})")]
    MixedSpecs(String, String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

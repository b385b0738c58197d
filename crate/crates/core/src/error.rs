use thiserror::Error;

/// Failure classes, each mapped to a distinct process exit code by the binary.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("degree cap {cap} reached: {detail}")]
    Cap { cap: usize, detail: String },
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Error {
        Error::Input(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Error {
        Error::Internal(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Internal(_) => 2,
            Error::Cap { .. } | Error::Resource(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("resource exhausted: {0}")]
    Resource(String),
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("timeout: {0}")]
    Timeout(String),
    #[error("{step} failed: {message}")]
    Step { step: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn step(step: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Step { step: step.into(), message: message.into() }
    }
}

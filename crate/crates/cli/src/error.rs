use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cherednik::Error),
    #[error("cache corruption: {0}")]
    CacheCorruption(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid parameters: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

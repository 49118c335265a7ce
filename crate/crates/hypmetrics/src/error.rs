use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] hypmetrics_core::Error),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown case id `{0}`")]
    UnknownCase(String),
    #[error("unknown probe id `{0}`")]
    UnknownProbe(String),
    #[error("schedule error: {0}")]
    Schedule(String),
    #[error("invalid point `{input}`: {reason}")]
    Point { input: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use std::fmt::Display;

#[derive(Debug, thiserror::Error)]
pub enum AtlasError {
    /// Bad flags or inputs; nothing was computed.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl AtlasError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            _ => 3,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> AtlasError {
    AtlasError::Usage(msg.into())
}

pub fn compute<E: Display>(e: E) -> AtlasError {
    AtlasError::Compute(e.to_string())
}

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] rps_core::Error),
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown format `{0}`; expected text or json")]
    UnknownFormat(String),
    #[error("bad element `{0}`")]
    BadElement(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl WorkbenchError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        WorkbenchError::Io { path: path.into(), source }
    }
}

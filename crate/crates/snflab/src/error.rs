use std::io;

use snflab_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("matrix file line {line}: {message}")]
    MatrixFormat { line: usize, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl LabError {
    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, LabError::Core(e) if e.is_resource())
    }
}

pub type LabResult<T> = Result<T, LabError>;

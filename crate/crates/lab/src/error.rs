use std::path::PathBuf;

use thiserror::Error;

/// Failure of a command, classified by exit code.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config file {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Validation(_) | LabError::Config { .. } => 1,
            LabError::Numerical(_) => 2,
            LabError::Io { .. } | LabError::Csv(_) | LabError::Json(_) => 2,
        }
    }
}

impl From<fkpp_core::Error> for LabError {
    fn from(e: fkpp_core::Error) -> Self {
        use fkpp_core::Error as E;
        match e {
            E::Instability { .. }
            | E::NoCrossing { .. }
            | E::InsufficientSamples { .. }
            | E::InsufficientSnapshots { .. } => LabError::Numerical(e.to_string()),
            _ => LabError::Validation(e.to_string()),
        }
    }
}

pub type LabResult<T> = Result<T, LabError>;

use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config file {path}: {message}")]
    Config { path: String, message: String },
    #[error(transparent)]
    Numeric(#[from] platelab_core::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl LabError {
    /// `2` for anything the caller got wrong, `1` for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Numeric(platelab_core::Error::InvalidParameter { .. })
            | LabError::Numeric(platelab_core::Error::Divergent { .. })
            | LabError::Usage(_)
            | LabError::Config { .. }
            | LabError::Io(_)
            | LabError::Csv(_) => 2,
            LabError::Numeric(_) => 1,
        }
    }
}

pub type LabResult<T> = Result<T, LabError>;

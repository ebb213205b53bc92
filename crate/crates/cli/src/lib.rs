//! Library side of the `qcorr` command: sweep output, figure series and the
//! validation suite.

pub mod figure;
pub mod output;
pub mod validate;

use std::path::Path;

use qcorr_core::QcorrError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] QcorrError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("failed to write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }

    /// Process exit status: 2 for bad input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(QcorrError::InvalidParameter(_)) => 2,
            _ => 1,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

/// Exit status for invalid input.
pub const EXIT_VALIDATION: u8 = 2;
/// Exit status when a numerical evaluation or simulation failed.
pub const EXIT_NUMERIC: u8 = 3;
/// Exit status for file system and output failures.
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] noma_drn_core::Error),
    #[error("{failed} of {total} rows failed; see the error column")]
    RowsFailed { failed: usize, total: usize },
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        use noma_drn_core::Error as Core;
        match self {
            CliError::Invalid(_) => EXIT_VALIDATION,
            CliError::Core(Core::Validation(_) | Core::Parse(_) | Core::Domain(_)) => {
                EXIT_VALIDATION
            }
            CliError::Core(Core::Quadrature(_)) | CliError::RowsFailed { .. } => EXIT_NUMERIC,
            CliError::Core(Core::Io(_))
            | CliError::File { .. }
            | CliError::Io(_)
            | CliError::Csv(_) => EXIT_IO,
        }
    }
}

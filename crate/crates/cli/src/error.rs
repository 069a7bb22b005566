use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("verification failed: {0} check(s) out of tolerance")]
    Verification(usize),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<rydberg_jc::ModelError> for CliError {
    fn from(e: rydberg_jc::ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

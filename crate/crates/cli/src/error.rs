use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed job file: {0}")]
    Json(serde_json::Error),
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("invalid job: {0}")]
    Validation(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        source: nckit_core::Error,
    },
    /// Two certified values contradict each other.
    #[error("certified results disagree: {0}")]
    Violation(String),
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T, CliError>;
}

impl<T> StageExt<T> for nckit_core::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Stage { stage, source })
    }
}

use std::path::PathBuf;

use rsrepair_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cross-check mismatch: {0}")]
    Mismatch(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type AppResult<T> = std::result::Result<T, AppError>;

impl AppError {
    /// 2 for disagreements between routes that must agree, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Mismatch(_) => 2,
            AppError::Core(CoreError::CharSumMismatch { .. } | CoreError::NonIntegerSum { .. }) => 2,
            _ => 1,
        }
    }
}

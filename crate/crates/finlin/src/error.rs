use thiserror::Error;

/// Errors shared across the toolkit. Syntax/semantic variants carry enough
/// text to surface as CLI input errors with exit code 3.
#[derive(Debug, Error)]
pub enum FinlinError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

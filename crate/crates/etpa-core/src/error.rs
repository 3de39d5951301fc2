//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EtpaError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degenerate amplitude: {0}")]
    DegenerateAmplitude(String),

    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),

    #[error("grid alignment: {0}")]
    GridAlignment(String),

    #[error("grid too narrow: {0}")]
    Truncation(String),

    #[error("amplitude not normalized: {0}")]
    NotNormalized(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("resonant intermediate state: {0}")]
    ResonantIntermediate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, EtpaError>;

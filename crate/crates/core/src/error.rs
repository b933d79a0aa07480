use thiserror::Error;

/// Errors produced anywhere in the preparation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrepError {
    #[error("invalid register: {0}")]
    InvalidRegister(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("degenerate state: norm {norm:e} is below the zero tolerance")]
    DegenerateState { norm: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid operation: {0}")]
    InvalidOp(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T, E = PrepError> = std::result::Result<T, E>;

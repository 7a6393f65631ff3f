use thiserror::Error;

/// Errors reported across the crate. Violations of diagram invariants are
/// data (see [`crate::diagram::validate`]), not errors; this type covers
/// malformed input, misuse of an operation, and exceeded resource caps.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: String, msg: String },

    #[error("diagram is invalid: {0:?}")]
    InvalidDiagram(Vec<String>),

    #[error("unknown arc id `{0}`")]
    UnknownArc(String),

    #[error("unknown crossing id `{0}`")]
    UnknownCrossing(String),

    #[error("move site does not match the required pattern: {0}")]
    PatternMismatch(String),

    #[error("evaluation point is not invertible: {0}")]
    NonInvertible(String),

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("index {k} out of range for {what} (must be 0..={max})")]
    IndexOutOfRange { k: usize, what: &'static str, max: usize },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),

    #[error("invalid index sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("index {index} is outside 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    /// A form or vector references a position beyond the generation support bound.
    #[error("position {position} exceeds the support bound {bound}; increase the bound")]
    SupportOverflow { position: usize, bound: usize },

    #[error("form set is not saturated; results derived from it would be unsound")]
    Unsaturated,

    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("tensor shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("braid context rejected: {0}")]
    InvalidBraid(String),

    #[error("unknown builtin type `{0}`")]
    UnknownBuiltin(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

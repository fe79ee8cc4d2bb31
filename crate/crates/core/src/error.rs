use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{k} is not coprime to the conductor {n}")]
    NotCoprime { k: i64, n: u64 },

    #[error("element is not real: {0}")]
    NotReal(String),

    #[error("element is not totally positive: {0}")]
    NotTotallyPositive(String),

    #[error("conductor {0} exceeds the supported limit")]
    ConductorTooLarge(u64),

    #[error("not modular data: {0}")]
    NotModular(String),

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

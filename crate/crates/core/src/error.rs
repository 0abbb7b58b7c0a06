use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    #[error("non-finite payoff at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("payoff {value} at ({row}, {col}) is outside [0, 1]")]
    OutOfRange { row: usize, col: usize, value: f64 },

    #[error("game must have at least one row and one column")]
    EmptyGame,

    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("linear program solver failed: {0}")]
    SolverFailure(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("payoff ({row}, {col}) was read before being queried")]
    UnknownEntry { row: usize, col: usize },

    #[error("exhaustive search found no profile within {target}")]
    SearchExhausted { target: f64 },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("i/o failure: {0}")]
    Io(String),

    #[error("all {attempts} attempts ended without an accepted profile")]
    ProbabilisticFailure { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

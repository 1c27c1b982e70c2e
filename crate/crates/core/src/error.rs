use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("module is not graded: {0}")]
    NotGraded(String),
    #[error("invalid ring map: {0}")]
    InvalidMap(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("matrix factorization identity fails at entry ({row}, {col}): {detail}")]
    NotAFactorization { row: usize, col: usize, detail: String },
    #[error("window too small: {0}")]
    Window(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at {0}")]
    DenominatorVanishes(String),
    #[error("not a set partition: {0}")]
    NotAPartition(String),
    #[error("last top and bottom vertices must share a block at half-integer rank")]
    HalfIntegerConstraintViolated,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(i64),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(String, String),
    #[error("parameter mode mismatch")]
    ModeMismatch,
    #[error("operation needs an integer rank, got {0}")]
    NonIntegerRank(String),
    #[error("operation needs a half-integer rank, got {0}")]
    NonHalfIntegerRank(String),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("invalid embedding target {0}")]
    InvalidTarget(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("vertex {0} not found at this level")]
    VertexNotFound(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("bad subset: {0}")]
    BadSubset(String),
    #[error("not semisimple: {0}")]
    NotSemisimple(String),
    #[error("degenerate trace form")]
    DegenerateForm,
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("degeneracy deeper than the first failure layer: {0}")]
    OutOfScopeDepth(String),
    #[error("degenerate eigenvalues: {0}")]
    DegenerateEigenvalues(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("unknown Lie type `{0}`")]
    UnknownType(String),
    #[error("node index {index} out of range 1..={rank}")]
    NodeOutOfRange { index: usize, rank: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight has {got} coordinates, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("crossed-node set must be nonempty")]
    EmptySigma,
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("invalid orders: {0}")]
    InvalidOrders(String),
    #[error("labels live in different scopes")]
    ScopeMismatch,
    #[error("module dimension {dim} exceeds size cap {cap}")]
    SizeCap { dim: String, cap: usize },
    #[error("inconsistent linear algebra: {0}")]
    Inconsistent(String),
    #[error("structure-constant construction failed: {0}")]
    Construction(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

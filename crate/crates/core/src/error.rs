use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },
    #[error("generator {name} out of range for genus {genus}")]
    GeneratorOutOfRange { name: String, genus: usize },
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },
    #[error("genus {0} unsupported (need at least 3)")]
    GenusTooSmall(usize),
    #[error("word length {len} exceeds cap {cap}")]
    WordTooLong { len: usize, cap: usize },
    #[error("index {index} out of range for {len} factors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("product is not a power of the boundary twist")]
    NotBoundaryPower,
    #[error("product is not central")]
    NotCentral,
    #[error("separating factor present at position {0}")]
    SeparatingFactor(usize),
    #[error("step {step}: {reason}")]
    IllegalMove { step: usize, reason: String },
    #[error("{0} does not match")]
    EndpointMismatch(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("ledger contradiction: {0}")]
    Ledger(String),
    #[error("non-integer result: {0}")]
    NonInteger(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

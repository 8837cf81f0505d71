use thiserror::Error;

/// Errors raised by the combinatorial engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("unknown root system preset {0:?} (expected A1..A4)")]
    UnknownPreset(String),
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight has {got} coordinates, root system has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight ({0}) is not dominant")]
    NotDominant(String),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("invalid subset {0:?}: indices must be strictly increasing and in range")]
    InvalidSubset(Vec<usize>),
    #[error("word {0:?} is not reduced")]
    NonReducedWord(Vec<usize>),
    #[error("negative entry {value} at position {position}")]
    NegativeEntry { position: usize, value: i64 },
    #[error("incompatible input: {0}")]
    Incompatible(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("vertex budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("element is not in the crystal: {0}")]
    NotInCrystal(String),
    #[error("element set is not closed under e_{0}")]
    NotEClosed(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

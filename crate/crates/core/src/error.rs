use thiserror::Error;

/// Errors raised by the lattice, body, and sparsifier routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is rank deficient (rank {rank}, need {needed}): degenerate lattice")]
    RankDeficient { rank: usize, needed: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("vector is not in the dual lattice")]
    NotDual,

    #[error("second lattice is not a sublattice of the first")]
    NotSublattice,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("good-vector precondition violated: {0}")]
    Precondition(String),

    #[error("existence violated: {0}")]
    ExistenceViolated(String),

    #[error("retry budget of {0} draws exhausted")]
    RetryBudgetExhausted(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors that certify a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ExistenceViolated(_) | Error::RetryBudgetExhausted(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

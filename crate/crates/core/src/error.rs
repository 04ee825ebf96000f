use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is singular modulo {p}")]
    SingularModP { p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("digit difference matrix is singular; zero set is not finite")]
    DegenerateDigits,
    #[error("zero set is not known to be complete")]
    IncompleteZeroSet,
    #[error("digit set is not of the required form: {0}")]
    BadDigitForm(String),
    #[error("B^-1 D is not an integer digit set")]
    NonIntegerDigits,
    #[error("transport produced a non-integer vector")]
    NonIntegerResult,
    #[error("operation requires dimension {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("matrix is not expanding")]
    NotExpanding,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("exact and numeric checks disagree: {0}")]
    NumericMismatch(String),
}

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series is not invertible: constant term is not a nonzero constant")]
    NotInvertible,

    #[error("exp needs a series with zero constant term")]
    NonzeroConstantTerm,

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeded the size cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("tensor power has {size} basis vectors, above the oracle cap of {cap}")]
    OracleCapExceeded { size: usize, cap: usize },

    #[error("enumeration of {size} tuples exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("operation needs an odd prime, got {0}")]
    EvenCharacteristic(u64),

    #[error("expected an integer value, got {0}")]
    NonIntegral(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

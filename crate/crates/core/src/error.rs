use thiserror::Error;

/// Errors raised by the algebra engine and its parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("monomial set is empty")]
    EmptySet,

    #[error("monomial is not a member of the set")]
    NotInSet,

    #[error("duplicate monomial {0}")]
    DuplicateMonomial(String),

    #[error("monomial {0} is absent")]
    Absent(String),

    #[error("monomial {divisor} does not divide {target}")]
    NotDivisible { divisor: String, target: String },

    #[error("{count} involutive divisors found for {target}; the set is not autoreduced")]
    AmbiguousDivisor { target: String, count: usize },

    #[error("prolongation of degree {degree} exceeds the degree bound {bound}")]
    BoundExceeded { degree: u32, bound: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("enumeration of {required} monomials exceeds the budget of {budget}")]
    EnumerationBudget { required: u128, budget: u128 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

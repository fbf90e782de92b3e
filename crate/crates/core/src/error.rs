use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact over the integers")]
    NonExactDivision,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("residues belong to different quotient rings")]
    RingMismatch,
    #[error("polynomial is not monic of positive degree")]
    NotMonic,
    #[error("k must be at least 3, got {0}")]
    InvalidK(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("digit {digit} at position {position} is outside [0, {bound})")]
    DigitOutOfRange {
        position: usize,
        digit: String,
        bound: String,
    },
    #[error("{requested} elements exceed the configured budget of {budget}")]
    BudgetExceeded { requested: String, budget: u64 },
    #[error("input {0} is below 2")]
    InputTooSmall(String),
    #[error("{0} is not a supported prime")]
    NotSupportedPrime(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("alternative `{0}` appears twice in a ranking")]
    DuplicateAlternative(String),
    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),
    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(String),
    #[error("alpha {alpha} is outside the domain {domain}")]
    AlphaOutOfDomain { alpha: String, domain: &'static str },
    #[error("malformed separator `{0}`")]
    MalformedSeparator(String),
    #[error("invalid preference: {0}")]
    InvalidPreference(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("a single alternative has no adjacent pairs")]
    NoAdjacentPairs,
    #[error("every forced optimum is infeasible for this profile")]
    DegenerateProfile,
    #[error("enumeration needs {required} intensity assignments, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("price of ignoring intensities is unbounded on this profile")]
    InfinitePoII,
    #[error("certificate infeasible at {0}")]
    InfeasibleCertificate(String),
    #[error("equilibrium identity violated at {0}")]
    IdentityViolated(String),
    #[error("no alternative admits a fractional perfect matching")]
    NoFeasibleAlternative,
    #[error("no agent has intensity rank at most {0}")]
    EmptyCore(usize),
    #[error("invalid scoring vector: {0}")]
    InvalidScoringVector(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("requires the {0} elicitation mode")]
    WrongMode(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the toolkit's domain operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("coefficient {value} is out of range for GF({p})")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("system is not reachable")]
    NotReachable,
    #[error("state did not return to zero within {0} steps")]
    StateNotFlushed(usize),
    #[error("window too short: alpha = {0} is negative")]
    WindowTooShort(i64),
    #[error("system is not MDP certified: {0}")]
    NotMdp(String),
    #[error("property regression: {0}")]
    Regression(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ZeroDegree => "zero_degree",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::CoefficientOutOfRange { .. } => "coefficient_out_of_range",
            Error::FieldMismatch => "field_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Singular => "singular",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::NotReachable => "not_reachable",
            Error::StateNotFlushed(_) => "state_not_flushed",
            Error::WindowTooShort(_) => "window_too_short",
            Error::NotMdp(_) => "not_mdp",
            Error::Regression(_) => "regression",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

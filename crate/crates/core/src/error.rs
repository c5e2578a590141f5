use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("q mismatch: {left} vs {right}")]
    QMismatch { left: u64, right: u64 },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("not a power series: {0}")]
    NotAPowerSeries(String),

    #[error("point is within {tolerance:e} of a pole")]
    PoleProximity { tolerance: f64 },

    #[error("invalid field spec ({field}): {reason}")]
    InvalidSpec { field: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("curve y^2 = x^3 + {a}x + {b} is singular mod {p}")]
    SingularCurve { p: u64, a: u64, b: u64 },

    #[error("enumeration budget exceeded: {needed} tuples > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn spec(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidSpec {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

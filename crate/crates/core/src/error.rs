use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameter d = {d}: {reason}")]
    InvalidField { d: i64, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("singular model: discriminant is zero")]
    SingularModel,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no element of norm {q}: {q} is inert")]
    InertPrime { q: u64 },
    #[error("bad reduction at the prime above {q}")]
    BadReduction { q: u64 },
    #[error("inconclusive: factorization budget {bound} left cofactor {cofactor}")]
    FactorBudget { bound: u64, cofactor: String },
    #[error("point-count budget exceeded: field size {size} > {budget}")]
    CountBudget { size: u64, budget: u64 },
    #[error("enumeration of {required} candidates exceeds cap {cap}")]
    EnumerationCap { cap: u64, required: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

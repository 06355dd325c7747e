use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{divisor} does not divide {dividend}")]
    NotADivisor { divisor: String, dividend: String },

    #[error("monoid mismatch: {left} vs {right}")]
    MonoidMismatch { left: String, right: String },

    #[error("function is not a unit: value at 1 is zero")]
    NotAUnit,

    #[error("zero element has no ideal factorization")]
    ZeroElement,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("homomorphism is not quasi-integral: {0}")]
    NotQuasiIntegral(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),

    #[error("valuation cannot be certified: {0}")]
    Uncertified(String),

    #[error("sequence is not Cauchy: {0}")]
    NotCauchy(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

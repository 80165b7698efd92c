use thiserror::Error;

/// Errors raised by the number-theoretic kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value must be positive")]
    NotPositive,
    #[error("value is rational: {0}")]
    NotIrrational(String),
    #[error("floor of {0} cannot be certified at the working precision")]
    AmbiguousFloor(String),
    #[error("partial quotient cannot be certified at the working precision")]
    PrecisionExhausted,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic fields (sqrt {0} vs sqrt {1})")]
    FieldMismatch(i128, i128),
    #[error("malformed number `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("alpha must be greater than one")]
    AlphaNotGreaterThanOne,
    #[error("alpha must be less than one")]
    AlphaNotLessThanOne,
    #[error("invalid residue class {a} mod {q}: {reason}")]
    InvalidResidueClass { a: i64, q: i64, reason: &'static str },
    #[error("sieve limit {0} is below the minimum of 2")]
    LimitTooSmall(u64),
    #[error("sieve limit {limit} exceeds the memory budget of {budget}")]
    LimitTooLarge { limit: u64, budget: u64 },
    #[error("sieve table covers [1, {limit}] but {needed} is required")]
    TableTooSmall { needed: i128, limit: u64 },
    #[error("smoothing width {delta} is out of range for gamma {gamma}")]
    DeltaOutOfRange { gamma: f64, delta: f64 },
    #[error("gamma must lie strictly between 0 and 1, got {0}")]
    GammaOutOfRange(f64),
    #[error("sample point {0} is outside [0, 1)")]
    PointOutOfRange(f64),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("polynomial P0 must be nonzero")]
    ZeroP0,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cannot project a sign condition of length {0}")]
    ProjectTooShort(usize),
    #[error("sign list is not strictly increasing at position {0}")]
    NotSorted(usize),
    #[error("unsupported base sign list {0}")]
    BadBaseCase(String),
    #[error("interval ({lo}, {hi}) is invalid: {reason}")]
    BadInterval {
        lo: String,
        hi: String,
        reason: &'static str,
    },
    #[error("naive method refuses s = {0} > 6")]
    TooManyPolys(usize),
    #[error("solver step out of range: {0}")]
    BadStep(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

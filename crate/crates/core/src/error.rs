use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("field of size {p}^{degree} exceeds the size cap of {cap} elements")]
    SizeCap { p: u32, degree: u32, cap: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),

    #[error("cyclotomic arithmetic is only supported for p in {{2, 3, 5, 7}}, got {0}")]
    UnsupportedCharacteristic(u32),

    #[error("incompatible spaces: {0}")]
    Incompatible(String),

    #[error("function is not a bijection")]
    NotBijective,

    #[error("length {0} is not a power of two")]
    BadLength(usize),

    #[error("enumeration of {needed} codewords exceeds the budget of {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("position {pos} out of range for length {len}")]
    OutOfRange { pos: usize, len: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("non-integral value in {0}")]
    NonIntegral(String),

    #[error("CSS inclusion violated: dual(C_Z) is not contained in C_X")]
    InclusionViolated,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error at position {pos} in {input:?}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

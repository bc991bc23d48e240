use thiserror::Error;

/// Errors raised by field construction, parsing, and table computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("unsupported field parameters: {0}")]
    UnsupportedField(String),
    #[error("modulus must have {expected} coefficients (degree n, constant term first), got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus is not monic")]
    NonMonicModulus,
    #[error("modulus is reducible over Z_{0}")]
    ReducibleModulus(u32),
    #[error("no built-in modulus for p = {p}, n = {n}; supply one explicitly")]
    MissingModulus { p: u32, n: u32 },
    #[error("generator {0} does not have multiplicative order p^n - 1")]
    NotPrimitive(String),
    #[error("element index {index} out of range for a field with {size} elements")]
    ElementOutOfRange { index: u64, size: u64 },
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} does not divide the extension degree")]
    NotADivisor(u32),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exponent {exponent} out of range: must be below p^n = {size}")]
    ExponentOutOfRange { exponent: u64, size: u64 },
    #[error("function is not a permutation")]
    NotPermutation,
    #[error("multiplier c = {0} is not allowed here")]
    ForbiddenMultiplier(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no published fixture for {0}")]
    FixtureNotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("working precision must be at least 1 digit")]
    InvalidPrecision,
    #[error("operands live in different rings (Z_{0} at {1} digits vs Z_{2} at {3} digits)")]
    RingMismatch(u64, u32, u64, u32),
    #[error("element is not a unit of Z_p")]
    NotAUnit,
    #[error("no square root exists: residue is a non-square modulo {0}")]
    NoSquareRoot(u64),
    #[error("square roots are only implemented for odd primes")]
    UnsupportedPrime,
    #[error("precision exhausted: {0}")]
    PrecisionLoss(String),
    #[error("element does not lie in Z_p")]
    NotIntegral,
    #[error("windows do not match")]
    WindowMismatch,
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("operator is not contractive (some entry has norm > 1)")]
    NotContractive,
    #[error("map is not injective: {0}")]
    NotInjective(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("not a normal contraction: inequality fails at n = {0}")]
    NotNormalContraction(u32),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("elements live on different carriers")]
    CarrierMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the algebraic layers (polynomials, differences, certificates).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dilation factor must be at least 1, got {0}")]
    BadDilation(i64),

    #[error("order n must be at least {min}, got {got}")]
    OrderTooSmall { min: u32, got: u32 },

    #[error("order n = {got} exceeds the supported maximum {max}")]
    OrderTooLarge { max: u32, got: u32 },

    #[error("evaluation at 0 of a polynomial with negative exponents")]
    ZeroWithNegativeExponent,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("duplicate node {0} in difference scheme")]
    DuplicateNode(i64),

    #[error("duplicate certificate term (k = {k}, s = {s})")]
    DuplicateTerm { k: i64, s: u64 },

    #[error("generator set does not span r_{n} (s candidates {candidates:?})")]
    Infeasible { n: u32, candidates: Vec<u64> },

    #[error("certificate does not verify: {0}")]
    Unverified(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

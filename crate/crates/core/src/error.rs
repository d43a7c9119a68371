use thiserror::Error;

/// Errors raised by the algebra, field and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("a denominator vanished identically under substitution")]
    DenominatorVanished,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("variable `{0}` has no binding")]
    UnboundVariable(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("randomized rank found no pole-free evaluation point in {retries} attempts")]
    RandomizationExhausted { retries: u32 },
    #[error("the differential polynomial is zero")]
    ZeroPolynomial,
    #[error("the element is constant (its derivative is zero)")]
    ConstantElement,
    #[error("b is constant; the density step needs b' != 0")]
    ConstantB,
    #[error("the factor c is zero")]
    ZeroFactor,
    #[error("no generator is nonconstant")]
    NoNonconstant,
    #[error("search caps exhausted: {0}")]
    CapExceeded(String),
    #[error("no membership certificate of degree <= {degree_cap}")]
    NotFound { degree_cap: u32 },
    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),
    #[error("W_{{{k},{l}}} decomposition failed: {reason}")]
    DecompositionFailed { k: usize, l: usize, reason: String },
    #[error("no corollary witness for k = {k}")]
    NoWitness { k: usize },
    #[error("certificate does not revalidate: {0}")]
    InvalidCertificate(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("prime {0} divides the index of the defining order and has no exceptional splitting entry")]
    IndexDivisorUnknown(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ideals belong to different fields")]
    MixedFields,
    #[error("argument {value} exceeds table bound {bound}")]
    BoundExceeded { value: f64, bound: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("coefficient sequences have different bounds ({0} vs {1})")]
    BoundMismatch(usize, usize),
    #[error("pole at s = 1")]
    Pole,
    #[error("argument outside the supported half plane: {0}")]
    OutOfDomain(String),
    #[error("analytic continuation unavailable for non-normal cubic fields at Re(s) = {0}")]
    UnsupportedContinuation(f64),
    #[error("principal character; use the Riemann zeta function instead")]
    PrincipalCharacter,
    #[error("regime violation: x = {x}, y = {y} is outside x <= y < x^3")]
    RegimeViolation { x: f64, y: f64 },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("table was built in counts-only mode; ideal lists are unavailable")]
    CountsOnly,
    #[error("cache: {0}")]
    Cache(String),
}

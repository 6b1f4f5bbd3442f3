use thiserror::Error;

/// Errors raised by the algebraic and combinatorial engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient ring mismatch: {left} variables vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },

    #[error("a monomial ideal needs at least one generator")]
    EmptyGenerators,

    #[error("operation requires a proper ideal, got the unit ideal")]
    UnitIdeal,

    #[error("ideal is not square-free")]
    NotSquareFree,

    #[error("ring descriptor is invalid: {0}")]
    InvalidRing(String),

    #[error("exponent {exponent} of x{variable} exceeds the polarization cap {cap}")]
    ExponentExceedsCap { variable: usize, exponent: u32, cap: u32 },

    #[error("exponent {0} is above the supported cap 2^31-1")]
    ExponentTooLarge(u64),

    #[error("prime {prime:?} is not an associated prime of the ideal")]
    NotAssociated { prime: Vec<usize> },

    #[error("colon ideal is not prime")]
    ColonNotPrime,

    #[error("prime support must be a non-empty set of variables within the ring")]
    InvalidPrime,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid clutter: {0}")]
    InvalidClutter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{vertices} vertices exceed the supported maximum of {max}")]
    TooManyVertices { vertices: usize, max: usize },

    #[error("size guard exceeded: {what} needs n = {n}, guard is {guard}")]
    SizeGuard { what: &'static str, n: usize, guard: usize },

    #[error("field characteristic {0} is neither 0 nor a prime")]
    InvalidField(u64),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

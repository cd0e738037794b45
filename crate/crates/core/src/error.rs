use thiserror::Error;

/// Errors produced by the ordered-space and bounded-variation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An element carries a NaN or infinite entry.
    #[error("element has a non-finite entry")]
    InvalidElement,

    /// Two elements from different spaces were combined.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// An iterative routine did not reach its target accuracy.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// An operation defined on the positive cone received an element outside it.
    #[error("element is not in the positive cone")]
    NotInCone,

    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A parameter lies outside the function's interval, or a queried
    /// subinterval is empty.
    #[error("parameter out of domain: {0}")]
    OutOfDomain(String),

    /// The operation needs a lattice codomain (componentwise order); the
    /// symmetric-matrix space does not qualify.
    #[error("operation requires a lattice-ordered codomain")]
    NonLatticeSpace,

    /// Exhaustive partition enumeration was requested past its cap.
    #[error("too many breakpoints for exhaustive enumeration (cap {cap}, got {got})")]
    TooManyBreakpoints { cap: usize, got: usize },

    /// Two functions over different intervals were combined.
    #[error("interval mismatch")]
    IntervalMismatch,

    /// Two functions with different interpolation modes were combined.
    #[error("interpolation mode mismatch")]
    ModeMismatch,

    /// Input text could not be parsed into a domain value.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

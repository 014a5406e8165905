use thiserror::Error;

/// Errors raised by the symmetry computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("gram matrix is singular: the family does not span the space")]
    SingularGram,
    #[error("permutation is not a linear symmetry of the family")]
    NotASymmetry,
    #[error("group closure exceeded the order bound {0}")]
    OrderExceeded(usize),
    #[error("point is not a generating point")]
    NotGenerating,
    #[error("the group has no generating point")]
    NoGeneratingPoint,
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("idempotent is not orthogonal to its complement")]
    NotOrthogonal,
    #[error("cut space dimension {dim} exceeds the cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("cut-size bound violated: {0}")]
    BoundViolated(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

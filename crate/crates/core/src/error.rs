use alloc::string::String;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^31")]
    NotAnOddPrime(u32),
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relation {index}: {reason}")]
    InvalidRelation { index: usize, reason: String },
    #[error("relation ideal does not contain all paths of length {bound}: {remaining} basis paths survive")]
    NotAdmissible { bound: usize, remaining: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("modules or complexes belong to different algebras")]
    AlgebraMismatch,
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("module does not satisfy the relations of the algebra")]
    RelationsViolated,
    #[error("{0} vertices qualify for the new projective summand; expected exactly one")]
    AmbiguousProjectiveVertex(usize),
    #[error("summand is not registered")]
    Unregistered,
    #[error("could not split a module whose endomorphism ring is not local")]
    DecompositionFailed,
    #[error("completion is not silting: {0}")]
    CompletionNotSilting(&'static str),
    #[error("operation requires a complete exchange quiver")]
    Incomplete,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

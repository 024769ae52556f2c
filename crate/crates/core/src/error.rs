use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension d must be at least 1")]
    EmptyDimension,
    #[error("index {index} out of range 1..={d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not orthogonal: Q^T Q != I")]
    NotOrthogonal,
    #[error("matrix must be square with {expected} entries, got {found}")]
    BadShape { expected: usize, found: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("max weight must be at least 2, got {0}")]
    WeightTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as an exact scalar")]
pub struct ParseScalarError {
    input: String,
}

impl ParseScalarError {
    pub(crate) fn new(input: &str) -> Self {
        Self {
            input: input.to_string(),
        }
    }
}

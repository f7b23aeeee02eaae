use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polytope is empty")]
    Empty,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point lies outside the image of the projection")]
    OutsideImage,
    #[error("word is not a reduced word for the longest element: {0}")]
    NotReduced(String),
    #[error("weight is not dominant: {0}")]
    NonDominant(String),
    #[error("non-integral linearization: n={n} does not divide 2k={two_k}")]
    NonIntegralLinearization { n: usize, two_k: usize },
    #[error("input exceeds the supported size: {0}")]
    SizeGuard(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("time budget exhausted during {stage} ({done} of {total} items done)")]
    BudgetExceeded {
        stage: &'static str,
        done: usize,
        total: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

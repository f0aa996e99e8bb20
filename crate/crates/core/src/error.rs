use thiserror::Error;

use crate::halfspace::Classification;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("vectors and matrices need at least one column")]
    Empty,

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("+inf is not allowed in a point of R_max^n (coordinate {0})")]
    PositiveInfinity(usize),

    #[error("half-space is degenerate: {0}")]
    Degenerate(Classification),

    #[error("the point already lies in the half-space")]
    PointInside,

    #[error("the point is at infinite distance from the set")]
    InfiniteDistance,

    #[error("the point lies in the semimodule, there is nothing to separate")]
    NoSeparation,

    #[error("projection has -inf coordinates {0:?}; reduce to the support of the point first")]
    NonFiniteProjection(Vec<usize>),

    #[error("the point has empty support")]
    EmptySupport,

    #[error("column {column} of B has no finite entry")]
    Inadmissible { column: usize },

    #[error("no fixed point reached within {iterations} iterations")]
    IterationCap { iterations: usize },

    #[error("{0}")]
    Usage(String),
}

use thiserror::Error;

use crate::types::{LatticeVector, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("step matrix needs at least one row and one column")]
    EmptyMatrix,

    #[error("ragged step matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("column {0} of the step matrix is zero")]
    ZeroColumn(usize),

    /// `certificate` is a nonnegative, nonzero integer combination of the
    /// columns that sums to the zero vector.
    #[error(
        "cone is not pointed: {certificate} is a nonzero nonnegative relation among the columns"
    )]
    NotPointed { certificate: LatticeVector },

    #[error("functional {ell} is not strictly positive on column {column}")]
    NotCertifying { ell: LatticeVector, column: usize },

    #[error("negative coordinate in {0}")]
    NegativeCoordinate(LatticeVector),

    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("index set {0:?} is not strictly increasing")]
    MalformedIndexSet(Vec<usize>),

    #[error("incompatible series: {0}")]
    IncompatibleSeries(String),

    #[error("series truncated at degree {have} cannot supply degree {need}")]
    InsufficientBound { have: i64, need: i64 },

    #[error("series has no invertible constant term")]
    NotInvertible,

    #[error("coefficients must sum to 1, got {0}")]
    CoefficientSum(Scalar),

    #[error("weight table has {found} values, shape requires {expected}")]
    TableSize { expected: usize, found: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported series/rank pair {series}{rank}")]
    InvalidSeriesRank { series: char, rank: usize },

    #[error("not a Cartan matrix: {0}")]
    NotCartan(String),

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("parabolic subset K must be nonempty")]
    EmptyK,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("coset table is truncated at length {0}; a complete table is required")]
    TruncatedTable(usize),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("generators do not surject onto degree {degree}")]
    NonSurjective { degree: usize },

    #[error("table is not of type A")]
    NotTypeA,

    #[error("parabolic subset is not a singleton")]
    NotSingletonK,

    #[error("partition sizes do not match: |nu| = {nu}, |lambda| + |mu| = {sum}")]
    SizeMismatch { nu: usize, sum: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("internal consistency check failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the exact-arithmetic routines and the decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("generator {0} is the zero vector")]
    ZeroGenerator(usize),

    #[error("the cone spanned by the generators is not pointed")]
    NotPointed,

    #[error("invalid index partition: {0}")]
    BadPartition(String),

    #[error("malformed decomposition tree: {0}")]
    MalformedTree(String),

    #[error("dimension must be at least {min}, got {got}")]
    BadDimension { min: usize, got: usize },

    #[error("the ray bound is only stated for cones of dimension at least 2")]
    DimensionOne,

    #[error("the cone is not a complete intersection cone")]
    NotCICone,

    #[error("part {0} of the witness input is not a complete intersection")]
    PartNotCI(usize),

    #[error("the lattices of the two parts do not meet in a single line")]
    NoSharedLine,

    #[error("no coprime multiplier pair exists (multiple periods {period1} and {period2}, line content {content})")]
    NoAdmissiblePair {
        period1: BigInt,
        period2: BigInt,
        content: BigInt,
    },

    #[error("no positive multiple of the vector lies in the semigroup")]
    NoMultipleExists,

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("instance generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("{got} generators exceed the limit of {limit}")]
    TooManyGenerators { got: usize, limit: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("row {0} is the zero vector")]
    ZeroRow(usize),

    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        got: usize,
        expected: usize,
    },

    #[error("input contains no generators")]
    EmptyInput,

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

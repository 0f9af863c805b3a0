use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomials over different variable sets: ({0}, {1}) vs ({2}, {3})")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("source shape requires an odd dimension, got d = {0}")]
    OddDimensionRequired(usize),

    #[error("monomial {0} is not in the column index")]
    UnindexedMonomial(String),

    #[error("vector column {column} outside matrix column space of size {columns}")]
    ColumnSpaceMismatch { column: usize, columns: usize },

    #[error("no shape at grade {grade} for N = {n}, d = {d}")]
    NoShapeAtGrade { n: usize, d: usize, grade: usize },

    #[error("vocabulary is empty")]
    EmptyVocabulary,

    #[error("sign relation broken: {0}")]
    NotationRegression(String),

    #[error("incomplete shape set at grade {grade}: module rank {rank}, expected {expected}")]
    Incomplete { grade: usize, rank: usize, expected: usize },

    #[error("grade {grade} has {found} shapes, shape polynomial says {expected}")]
    HistogramMismatch { grade: usize, found: usize, expected: usize },

    #[error("grade {grade} exceeds the verified bound {bound}")]
    OutOfRange { grade: usize, bound: usize },

    #[error("grade {grade} polynomial is outside the span of the shapes")]
    NotInSpan { grade: usize },

    #[error("input is not antisymmetric")]
    NotAntisymmetric,

    #[error("input is not homogeneous")]
    NotHomogeneous,

    #[error("invalid word syntax: {0}")]
    WordSyntax(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live on different charts")]
    MixedCharts,
    #[error("`{expr}` is not valid on the chart: its denominator can vanish")]
    InvalidOnChart { expr: String },
    #[error("Jacobi identity fails at basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error("structure constants are not left-symmetric")]
    NotLeftSymmetric,
    #[error("structure constants are not associative")]
    NotAssociative,
    #[error("closure exceeded the cap of {0} basis elements")]
    CapExceeded(usize),
    #[error("connection is not flat affine")]
    NotFlat,
    #[error("input fields are linearly dependent")]
    DependentFields,
    #[error("generator {index} is not an infinitesimal affine transformation")]
    NotInfinitesimalAffine { index: usize },
    #[error("connection has non-polynomial Christoffel symbols")]
    NonPolynomialConnection,
    #[error("frame matrix is not generically invertible")]
    SingularFrame,
    #[error("unknown built-in group `{0}`")]
    UnknownName(String),
    #[error("point violates the chart's nonvanishing constraints")]
    InvalidPoint,
    #[error("parse error at column {column}: {message}")]
    ParseError { column: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported schema version {0}, expected 1")]
    SchemaVersion(u32),
}

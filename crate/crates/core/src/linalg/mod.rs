//! Exact linear algebra over the Gaussian rationals.

mod matrix;
mod period;
mod scalar;

pub use matrix::CMatrix;
pub use period::{alt_check, validate_period, PeriodMatrix};
pub use scalar::{common_denominator, parse_rational, rat, ratio, CScalar, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix is singular")]
    Singular,
    #[error("Im T is not positive definite (leading minor {index} = {value})")]
    NotPositiveDefinite { index: usize, value: String },
    #[error("Im T is not symmetric")]
    NotSymmetric,
    #[error("matrix has non-real entries")]
    NotReal,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix has non-integer entries")]
    NotInteger,
    #[error("parse error: {0}")]
    Parse(String),
}

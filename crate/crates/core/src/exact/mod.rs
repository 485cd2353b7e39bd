//! Exact arithmetic over ℚ(i) and dense linear algebra on top of it.

mod matrix;
mod scalar;

pub use matrix::{solve_proportionality, span_basis, ExactMatrix};
pub use scalar::{format_rational, parse_rational, rational_frac, rational_from_i64, Rational, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("proportionality is ill-posed: reference matrix is zero")]
    ZeroReference,
}

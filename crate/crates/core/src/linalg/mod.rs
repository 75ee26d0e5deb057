//! Exact rational linear algebra: scalars, matrices over an abstract
//! field, and canonical subspaces.
//!
//! Everything here is exact; there is no floating point in this module.
//! Subspaces are kept in reduced row echelon form so that equality of
//! subspaces is equality of representations.

mod complex;
mod matrix;
mod scalar;
mod subspace;

pub use complex::ComplexScalar;
pub use matrix::{int_matrix, Field, Matrix};
pub use scalar::Scalar;
pub use subspace::{ExactSubspace, Subspace};

use thiserror::Error;

/// Ambient dimensions are capped to keep the exact routines at desk scale.
pub const DIM_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension {0} exceeds cap {1}")]
    DimensionCap(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid scalar literal `{0}`")]
    BadScalar(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

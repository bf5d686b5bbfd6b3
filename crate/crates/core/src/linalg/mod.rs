//! Exact dense linear algebra over the rationals and prime fields.
//!
//! Everything above this module is built on [`Mat`] and [`Scalar`]; no floating
//! point is used anywhere. Elimination always pivots on the first nonzero entry
//! in column order, so results (and therefore certificates) are reproducible.

mod mat;
mod scalar;
pub mod subspace;

pub use mat::{Echelon, Mat};
pub use scalar::{Field, Scalar, DEFAULT_PRIME};
pub use subspace::{Basis, IncrementalSpan};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("no solution: right-hand side is outside the column space")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("columns are linearly dependent")]
    Dependent,
    #[error("vector is not in the span")]
    NotInSpan,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("{0} is not a supported prime modulus")]
    BadModulus(u64),
}

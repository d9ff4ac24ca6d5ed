//! Sparse multivariate polynomials and matrices of polynomials.

mod monomial;
mod multipoly;
mod polmat;

use thiserror::Error;

pub use monomial::Monomial;
pub use multipoly::MultiPoly;
pub use polmat::{PolyMat, MAX_DET_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    PointLength { expected: usize, got: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("determinant of a {0}x{0} polynomial matrix is not supported")]
    TooLarge(usize),
    #[error("incompatible shapes ({rows} vs {cols})")]
    Shape { rows: usize, cols: usize },
    #[error("ragged rows")]
    Ragged,
}

//! Dense exact linear algebra: rank, kernels, canonical subspaces and
//! restriction of symmetric forms.
//!
//! A quadric is `x -> x^T M x` with `M` symmetric, so the coefficient of
//! `x_i x_j` (`i != j`) is `2 M_ij`.

mod mat;
mod subspace;

use thiserror::Error;

pub use mat::{Mat, RankKernel};
pub use subspace::Subspace;

use crate::arith::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("ragged rows")]
    Ragged,
}

/// Scale a projective point so its first nonzero coordinate is 1.
/// Returns `None` for the zero vector.
pub fn normalize_projective<S: Field>(v: &[S]) -> Option<Vec<S>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().ok()?;
    Some(v.iter().map(|x| x.clone() * inv.clone()).collect())
}

/// Projective equality of two nonzero vectors.
pub fn projectively_equal<S: Field>(a: &[S], b: &[S]) -> bool {
    match (normalize_projective(a), normalize_projective(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

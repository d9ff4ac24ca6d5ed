//! Webs of quadrics in `P^7`, their determinantal octics, and the
//! correspondence between the base locus of a web containing a plane and the
//! double cover of `P^3` branched along the octic.
//!
//! Points of `P^7` are `Vec<S>` of length 8, web parameters `lambda` are
//! `Vec<S>` of length 4. A plane is stored as a canonical 3-dimensional
//! subspace of `S^8`; the default plane is `x0 = ... = x4 = 0`.

mod classify;
mod correspond;
mod json;
mod nodes;
mod octic;
mod sample;

use num_traits::Zero;
use thiserror::Error;

pub use classify::{classify_member, Classification, MemberClass};
pub use correspond::{
    point_to_quadric, quadric_to_points, residual_intersection, tangent_hull, BinaryForm,
    CorrespondenceResult, ResidualIntersection, ResidualTag, Splitting,
};
pub use json::{JsonField, WebJson};
pub use nodes::{node_census, node_census_brute, node_jacobian, NodeRecord};
pub use octic::{det_octic, det_octic_interpolated, OcticSurface};
pub use sample::{planted_rank6_web, sample_octic_point, sample_web, trial_rng, MAX_RESAMPLES};

use crate::arith::{ArithError, Field, FieldCtx};
use crate::linalg::{normalize_projective, LinalgError, Mat, Subspace};
use crate::poly::PolyError;

pub const AMBIENT: usize = 8;
pub const WEB_SIZE: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WebError {
    #[error("degenerate sample after {attempts} attempts: {reason}")]
    Degenerate { attempts: usize, reason: String },
    #[error("non-generic configuration: {0}")]
    NonGeneric(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("quadric through point is not unique (left kernel dimension {0})")]
    NonUniqueQuadric(usize),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("invalid web: {0}")]
    Invalid(String),
    #[error("web JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A projective plane in `P^7`.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane<S: Field> {
    space: Subspace<S>,
}

impl<S: Field> Plane<S> {
    pub fn new(space: Subspace<S>) -> Result<Self, WebError> {
        if space.ambient() != AMBIENT || space.dim() != 3 {
            return Err(WebError::Invalid(format!(
                "plane must be a 3-dimensional subspace of S^8, got dim {} in S^{}",
                space.dim(),
                space.ambient()
            )));
        }
        Ok(Plane { space })
    }

    /// `x0 = ... = x4 = 0`.
    pub fn standard<C: FieldCtx<Elem = S>>(ctx: &C) -> Self {
        Plane { space: Subspace::coordinate(ctx, AMBIENT, &[5, 6, 7]) }
    }

    pub fn space(&self) -> &Subspace<S> {
        &self.space
    }

    /// 8x3 basis matrix.
    pub fn basis(&self) -> &Mat<S> {
        self.space.basis()
    }

    pub fn contains(&self, p: &[S]) -> bool {
        self.space.contains(p)
    }

    /// Invertible 8x8 change of basis whose last three columns span the plane
    /// (coordinate vectors fill the first five).
    pub fn frame<C: FieldCtx<Elem = S>>(&self, ctx: &C) -> Mat<S> {
        let full = Subspace::full(ctx, AMBIENT);
        let mut cols = full.complement_in(&self.space);
        cols.extend(self.space.vectors());
        Mat::from_columns(AMBIENT, &cols)
    }
}

/// Four linearly independent symmetric 8x8 matrices, optionally all
/// vanishing on a common plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Web<S: Field> {
    quadrics: Vec<Mat<S>>,
    plane: Option<Plane<S>>,
    seed: Option<u64>,
}

impl<S: Field> Web<S> {
    pub fn new(quadrics: Vec<Mat<S>>, plane: Option<Plane<S>>, seed: Option<u64>) -> Result<Self, WebError> {
        if quadrics.len() != WEB_SIZE {
            return Err(WebError::Invalid(format!("expected 4 quadrics, got {}", quadrics.len())));
        }
        for (i, q) in quadrics.iter().enumerate() {
            if q.rows() != AMBIENT || q.cols() != AMBIENT {
                return Err(WebError::Invalid(format!("quadric {i} is not 8x8")));
            }
            if !q.is_symmetric() {
                return Err(WebError::Invalid(format!("quadric {i} is not symmetric")));
            }
        }
        if !quadrics_independent(&quadrics) {
            return Err(WebError::Invalid("quadrics are linearly dependent".into()));
        }
        if let Some(p) = &plane {
            for (i, q) in quadrics.iter().enumerate() {
                if !q.restrict_to_basis(p.basis())?.is_zero() {
                    return Err(WebError::Invalid(format!("quadric {i} does not contain the plane")));
                }
            }
        }
        Ok(Web { quadrics, plane, seed })
    }

    pub fn quadrics(&self) -> &[Mat<S>] {
        &self.quadrics
    }

    pub fn plane(&self) -> Option<&Plane<S>> {
        self.plane.as_ref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `M(lambda) = sum_i lambda_i Q_i`.
    pub fn matrix_at(&self, lambda: &[S]) -> Mat<S> {
        Mat::linear_combination(lambda, &self.quadrics)
    }

    pub fn member(&self, lambda: &[S]) -> Result<WebMember<S>, WebError> {
        WebMember::new(self, lambda)
    }

    /// Values `x^T Q_i x` of the four quadrics at `x`.
    pub fn values_at(&self, x: &[S]) -> Result<Vec<S>, WebError> {
        self.quadrics.iter().map(|q| q.bilinear(x, x).map_err(WebError::from)).collect()
    }

    /// Membership in the base locus.
    pub fn in_base_locus(&self, x: &[S]) -> Result<bool, WebError> {
        Ok(x.iter().any(|c| !c.is_zero()) && self.values_at(x)?.iter().all(Zero::is_zero))
    }

    /// Rows `2 Q_i x`: the Jacobian of the four quadrics at `x`.
    pub fn jacobian_at(&self, x: &[S]) -> Result<Mat<S>, WebError> {
        let rows = self
            .quadrics
            .iter()
            .map(|q| q.mul_vec(x).map(|v| v.into_iter().map(|c| c.mul_int(2)).collect()))
            .collect::<Result<Vec<Vec<S>>, _>>()?;
        Ok(Mat::from_rows(rows)?)
    }

    fn require_plane(&self) -> Result<&Plane<S>, WebError> {
        self.plane.as_ref().ok_or_else(|| WebError::Precondition("web does not contain a plane".into()))
    }
}

fn quadrics_independent<S: Field>(qs: &[Mat<S>]) -> bool {
    // each symmetric matrix as a vector in 36-space
    let vecs: Vec<Vec<S>> = qs
        .iter()
        .map(|q| {
            let mut v = Vec::with_capacity(36);
            for i in 0..q.rows() {
                for j in i..q.cols() {
                    v.push(q[(i, j)].clone());
                }
            }
            v
        })
        .collect();
    Subspace::from_vectors(vecs[0].len(), &vecs).dim() == qs.len()
}

/// A member `M(lambda)` of a web, with `lambda` normalised so its first
/// nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct WebMember<S: Field> {
    lambda: Vec<S>,
    matrix: Mat<S>,
}

impl<S: Field> WebMember<S> {
    pub fn new(web: &Web<S>, lambda: &[S]) -> Result<Self, WebError> {
        if lambda.len() != WEB_SIZE {
            return Err(WebError::Precondition(format!("lambda has {} coordinates", lambda.len())));
        }
        let lambda = normalize_projective(lambda)
            .ok_or_else(|| WebError::Precondition("lambda is zero".into()))?;
        let matrix = web.matrix_at(&lambda);
        Ok(WebMember { lambda, matrix })
    }

    pub fn lambda(&self) -> &[S] {
        &self.lambda
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.matrix
    }
}

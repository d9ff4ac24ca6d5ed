use num_traits::Zero;

use super::{LinalgError, Mat};
use crate::arith::{Field, FieldCtx};

/// Linear subspace of `S^n`, stored in reduced column echelon form so that
/// equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S: Field> {
    ambient: usize,
    basis: Mat<S>,
}

impl<S: Field> Subspace<S> {
    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient: usize, vectors: &[Vec<S>]) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length != ambient dimension");
        let rows = Mat::from_fn(vectors.len(), ambient, |i, j| vectors[i][j].clone());
        let (r, pivots) = rows.rref();
        let k = pivots.len();
        let basis = Mat::from_fn(ambient, k, |i, j| r[(j, i)].clone());
        Subspace { ambient, basis }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Mat<S>) -> Self {
        Self::from_vectors(m.rows(), &m.columns())
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_vectors(ambient, &[])
    }

    pub fn full<C: FieldCtx<Elem = S>>(ctx: &C, ambient: usize) -> Self {
        Self::column_span(&Mat::identity(ctx, ambient))
    }

    /// Coordinate subspace spanned by `e_i` for `i` in `indices`.
    pub fn coordinate<C: FieldCtx<Elem = S>>(ctx: &C, ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<S>> = indices
            .iter()
            .map(|&k| (0..ambient).map(|i| if i == k { ctx.one() } else { ctx.zero() }).collect())
            .collect();
        Self::from_vectors(ambient, &vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one vector per column.
    pub fn basis(&self) -> &Mat<S> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<S>> {
        self.basis.columns()
    }

    pub fn canonical(&self) -> Self {
        Self::from_vectors(self.ambient, &self.vectors())
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut vs = self.vectors();
        vs.push(v.to_vec());
        Self::from_vectors(self.ambient, &vs).dim() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn join(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Shape { expected: self.ambient, got: other.ambient });
        }
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Ok(Self::from_vectors(self.ambient, &vs))
    }

    pub fn join_point(&self, p: &[S]) -> Result<Self, LinalgError> {
        if p.len() != self.ambient {
            return Err(LinalgError::Shape { expected: self.ambient, got: p.len() });
        }
        let mut vs = self.vectors();
        vs.push(p.to_vec());
        Ok(Self::from_vectors(self.ambient, &vs))
    }

    /// Intersection via the kernel of `[A | -B]`.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Shape { expected: self.ambient, got: other.ambient });
        }
        let (a, b) = (&self.basis, &other.basis);
        let stacked = Mat::from_fn(self.ambient, a.cols() + b.cols(), |i, j| {
            if j < a.cols() {
                a[(i, j)].clone()
            } else {
                -b[(i, j - a.cols())].clone()
            }
        });
        let vs: Vec<Vec<S>> = stacked
            .kernel_vectors()
            .into_iter()
            .map(|k| a.mul_vec(&k[..a.cols()]).expect("shapes agree"))
            .collect();
        Ok(Self::from_vectors(self.ambient, &vs))
    }

    /// Vectors from `self` that extend a basis of `sub` to a basis of `self`.
    pub fn complement_in(&self, sub: &Self) -> Vec<Vec<S>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.vectors() {
            if !acc.contains(&v) {
                acc = acc.join_point(&v).expect("same ambient");
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn join_of_axes() {
        let q = Rationals::default();
        let a = Subspace::coordinate(&q, 3, &[0]);
        let b = Subspace::coordinate(&q, 3, &[1]);
        assert_eq!(a.join(&b).unwrap().dim(), 2);
        assert_eq!(a.join(&a).unwrap(), a);
    }

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let q = Rationals::default();
        let a = Subspace::from_vectors(3, &[vec![q.elem(1), q.elem(1), q.elem(0)], vec![q.elem(0), q.elem(1), q.elem(0)]]);
        let b = Subspace::coordinate(&q, 3, &[0, 1]);
        assert_eq!(a, b);
        assert_eq!(a.canonical(), a);
    }

    #[test]
    fn modular_law_on_random_subspaces() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..60 {
            let n = 8;
            let (ka, kb) = (trial % 5 + 1, (trial / 5) % 6 + 1);
            // share a random common part of dimension <= min
            let common: Vec<Vec<_>> = (0..(trial % 3)).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect();
            let mut va = common.clone();
            va.extend((0..ka).map(|_| (0..n).map(|_| f.random(&mut rng)).collect::<Vec<_>>()));
            let mut vb = common;
            vb.extend((0..kb).map(|_| (0..n).map(|_| f.random(&mut rng)).collect::<Vec<_>>()));
            let a = Subspace::from_vectors(n, &va);
            let b = Subspace::from_vectors(n, &vb);
            let sum = a.join(&b).unwrap();
            let cap = a.intersect(&b).unwrap();
            assert_eq!(sum.dim() + cap.dim(), a.dim() + b.dim());
            assert!(a.contains_subspace(&cap) && b.contains_subspace(&cap));
        }
    }
}

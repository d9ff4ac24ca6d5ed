use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::{LinalgError, Subspace};
use crate::arith::{Field, FieldCtx};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Mat<S: Field> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Rank together with right and left kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct RankKernel<S: Field> {
    pub rank: usize,
    pub kernel: Subspace<S>,
    pub left_kernel: Subspace<S>,
}

impl<S: Field> Mat<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<S>]) -> Self {
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn zeros<C: FieldCtx<Elem = S>>(ctx: &C, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity<C: FieldCtx<Elem = S>>(ctx: &C, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ctx.one() } else { ctx.zero() })
    }

    pub fn random<C: FieldCtx<Elem = S>, R: rand::Rng + ?Sized>(
        ctx: &C,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        Self::from_fn(rows, cols, |_, _| ctx.random(rng))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape { expected: self.cols, got: other.rows });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc = acc + a.clone() * other[(k, j)].clone();
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::Shape { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Shape { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// `sum_k coeffs[k] * mats[k]`.
    pub fn linear_combination(coeffs: &[S], mats: &[Mat<S>]) -> Self {
        assert_eq!(coeffs.len(), mats.len());
        let (r, c) = (mats[0].rows, mats[0].cols);
        Self::from_fn(r, c, |i, j| {
            coeffs
                .iter()
                .zip(mats)
                .fold(S::zero(), |acc, (l, m)| acc + l.clone() * m[(i, j)].clone())
        })
    }

    /// Submatrix of the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(r, j)].clone();
                    if !v.is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - factor.clone() * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_vectors(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let one = self.some_one();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![one.int_like(0); self.cols];
            v[free] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            out.push(v);
        }
        out
    }

    pub fn kernel(&self) -> Subspace<S> {
        Subspace::from_vectors(self.cols, &self.kernel_vectors())
    }

    pub fn left_kernel(&self) -> Subspace<S> {
        self.transpose().kernel()
    }

    pub fn rank_kernel(&self) -> RankKernel<S> {
        let rank = self.rank();
        let kernel = self.kernel();
        let left_kernel = self.left_kernel();
        debug_assert_eq!(rank + kernel.dim(), self.cols, "rank-nullity");
        debug_assert_eq!(rank + left_kernel.dim(), self.rows, "rank-nullity (left)");
        RankKernel { rank, kernel, left_kernel }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<S, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare);
        }
        let mut m = self.clone();
        let mut det = self.some_one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(det.int_like(0));
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone() * inv.clone();
                for j in c..m.cols {
                    let v = m[(c, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - factor.clone() * v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan on `[M | I]`.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let n = self.rows;
        if n != self.cols {
            return Err(LinalgError::NotSquare);
        }
        let one = self.some_one();
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                one.clone()
            } else {
                one.int_like(0)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Restriction of the symmetric bilinear form to `s`: `B^T M B` for the
    /// canonical basis `B` of `s`.
    pub fn restrict_form(&self, s: &Subspace<S>) -> Result<Self, LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        if s.ambient() != self.rows {
            return Err(LinalgError::Shape { expected: self.rows, got: s.ambient() });
        }
        self.restrict_to_basis(s.basis())
    }

    /// `B^T M B` for an arbitrary basis matrix `B` (columns).
    pub fn restrict_to_basis(&self, basis: &Mat<S>) -> Result<Self, LinalgError> {
        basis.transpose().mul(self)?.mul(basis)
    }

    /// `v^T M w`.
    pub fn bilinear(&self, v: &[S], w: &[S]) -> Result<S, LinalgError> {
        let mw = self.mul_vec(w)?;
        Ok(v.iter().zip(&mw).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    /// A bound `1` of the matrix's field, if any entry is bound.
    fn some_one(&self) -> S {
        self.data.iter().find(|x| !x.is_zero()).map_or_else(S::one, |x| x.int_like(1))
    }
}

impl<S: Field> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S: Field> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Field> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_has_full_rank() {
        let f = PrimeField::default();
        let rk = Mat::identity(&f, 8).rank_kernel();
        assert_eq!(rk.rank, 8);
        assert_eq!(rk.kernel.dim(), 0);
        assert_eq!(rk.left_kernel.dim(), 0);
    }

    #[test]
    fn rank_six_diagonal() {
        let q = Rationals::default();
        let m = Mat::from_fn(8, 8, |i, j| if i == j && i < 6 { q.one() } else { q.zero() });
        let rk = m.rank_kernel();
        assert_eq!(rk.rank, 6);
        let e = |k: usize| (0..8).map(|i| if i == k { q.one() } else { q.zero() }).collect::<Vec<_>>();
        assert_eq!(rk.kernel, Subspace::from_vectors(8, &[e(6), e(7)]));
    }

    #[test]
    fn constructive_rank_oracle() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..100 {
            let r = trial % 8 + 1;
            let a = Mat::random(&f, 8, r, &mut rng);
            let b = Mat::random(&f, r, 8, &mut rng);
            let m = a.mul(&b).unwrap();
            let rk = m.rank_kernel();
            assert_eq!(rk.rank, r);
            for v in rk.kernel.basis().columns() {
                assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn det_matches_rank() {
        let q = Rationals::default();
        let m = Mat::from_rows(vec![
            vec![q.elem(2), q.elem(1)],
            vec![q.elem(4), q.elem(3)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), q.elem(2));
        let s = Mat::from_rows(vec![vec![q.elem(1), q.elem(2)], vec![q.elem(2), q.elem(4)]]).unwrap();
        assert_eq!(s.det().unwrap(), q.elem(0));
    }

    #[test]
    fn restrict_identity_to_coordinate_plane() {
        let q = Rationals::default();
        let id = Mat::identity(&q, 4);
        let e = |k: usize| (0..4).map(|i| if i == k { q.one() } else { q.zero() }).collect::<Vec<_>>();
        let s = Subspace::from_vectors(4, &[e(0), e(1)]);
        assert_eq!(id.restrict_form(&s).unwrap(), Mat::identity(&q, 2));
    }

    #[test]
    fn asymmetric_form_is_rejected() {
        let q = Rationals::default();
        let m = Mat::from_rows(vec![vec![q.elem(0), q.elem(1)], vec![q.elem(0), q.elem(0)]]).unwrap();
        let s = Subspace::full(&q, 2);
        assert_eq!(m.restrict_form(&s), Err(LinalgError::NotSymmetric));
    }
}

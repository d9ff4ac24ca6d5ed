use super::{MultiPoly, PolyError};
use crate::arith::Field;
use crate::linalg::Mat;

/// Largest square size accepted by `det` / `adjugate`.
pub const MAX_DET_SIZE: usize = 8;

/// Rectangular matrix of polynomials over a shared set of variables.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMat<S: Field> {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly<S>>,
}

impl<S: Field> PolyMat<S> {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> MultiPoly<S>,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.nvars(), nvars, "entry ({i},{j}) has wrong variable count");
                entries.push(e);
            }
        }
        PolyMat { rows, cols, nvars, entries }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly<S>>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::Ragged);
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|e| e.nvars() != nvars) {
            return Err(PolyError::VariableCount { left: nvars, right: bad.nvars() });
        }
        Ok(PolyMat { rows: r, cols: c, nvars, entries })
    }

    /// `sum_k x_k * mats[k]`, one variable per matrix.
    pub fn linear_combination(mats: &[Mat<S>]) -> Self {
        let n = mats.len();
        let (r, c) = (mats[0].rows(), mats[0].cols());
        Self::from_fn(r, c, n, |i, j| {
            let coeffs: Vec<S> = mats.iter().map(|m| m[(i, j)].clone()).collect();
            MultiPoly::linear_form(&coeffs)
        })
    }

    pub fn identity(n: usize, nvars: usize, one: S) -> Self {
        Self::from_fn(n, n, nvars, |i, j| {
            if i == j {
                MultiPoly::constant(nvars, one.clone())
            } else {
                MultiPoly::zero(nvars)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<S> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[MultiPoly<S>] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::Shape { rows: other.rows, cols: self.cols });
        }
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCount { left: self.nvars, right: other.nvars });
        }
        Ok(Self::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            let mut acc = MultiPoly::zero(self.nvars);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        }))
    }

    pub fn scale(&self, c: &MultiPoly<S>) -> Self {
        Self::from_fn(self.rows, self.cols, self.nvars, |i, j| self.get(i, j) * c)
    }

    pub fn eval(&self, point: &[S]) -> Result<Mat<S>, PolyError> {
        let vals = self.entries.iter().map(|e| e.eval(point)).collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_vec(self.rows, self.cols, vals))
    }

    fn check_square(&self) -> Result<usize, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows > MAX_DET_SIZE {
            return Err(PolyError::TooLarge(self.rows));
        }
        Ok(self.rows)
    }

    /// Determinants of every `|rows| x |rows|` minor on the given rows, indexed
    /// by column bitmask. Laplace expansion along rows with memoisation over
    /// column subsets: `sum_k C(n,k) k` polynomial products in total.
    fn minors_on_rows(&self, rows: &[usize]) -> Vec<Option<MultiPoly<S>>> {
        let n = self.cols;
        let mut layer: Vec<Option<MultiPoly<S>>> = vec![None; 1 << n];
        // the empty minor is 1; the field's one comes from any nonzero coefficient
        let one = self
            .entries
            .iter()
            .find_map(|e| e.terms().next().map(|(_, c)| c.int_like(1)))
            .unwrap_or_else(S::one);
        layer[0] = Some(MultiPoly::constant(self.nvars, one));
        for &row in rows {
            let mut next: Vec<Option<MultiPoly<S>>> = vec![None; 1 << n];
            for (mask, d) in layer.iter().enumerate() {
                let Some(d) = d else { continue };
                if d.is_zero() {
                    for c in (0..n).filter(|c| mask & (1 << c) == 0) {
                        next[mask | (1 << c)].get_or_insert_with(|| MultiPoly::zero(self.nvars));
                    }
                    continue;
                }
                for c in 0..n {
                    if mask & (1 << c) != 0 {
                        continue;
                    }
                    let entry = self.get(row, c);
                    let slot = next[mask | (1 << c)].get_or_insert_with(|| MultiPoly::zero(self.nvars));
                    if entry.is_zero() {
                        continue;
                    }
                    let term = entry * d;
                    let above = (mask >> (c + 1)).count_ones();
                    *slot = if above % 2 == 0 { &*slot + &term } else { &*slot - &term };
                }
            }
            layer = next;
        }
        layer
    }

    pub fn det(&self) -> Result<MultiPoly<S>, PolyError> {
        let n = self.check_square()?;
        let rows: Vec<usize> = (0..n).collect();
        let mut minors = self.minors_on_rows(&rows);
        Ok(minors[(1 << n) - 1].take().expect("full minor computed"))
    }

    /// Classical adjoint: `m * adj(m) = det(m) * I`.
    pub fn adjugate(&self) -> Result<Self, PolyError> {
        let n = self.check_square()?;
        let full = (1usize << n) - 1;
        let mut adj = vec![MultiPoly::zero(self.nvars); n * n];
        for i in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let minors = self.minors_on_rows(&rows);
            for j in 0..n {
                let minor = minors[full ^ (1 << j)].clone().expect("cofactor computed");
                // adj[j][i] = (-1)^(i+j) det(m without row i, column j)
                adj[j * n + i] = if (i + j) % 2 == 0 { minor } else { -&minor };
            }
        }
        Ok(PolyMat { rows: n, cols: n, nvars: self.nvars, entries: adj })
    }

    /// Maximal minors of a `r x c` matrix with `r <= c`, one per column subset
    /// in increasing bitmask order.
    pub fn maximal_minors(&self) -> Result<Vec<MultiPoly<S>>, PolyError> {
        if self.rows > self.cols || self.cols > 16 {
            return Err(PolyError::Shape { rows: self.rows, cols: self.cols });
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        Ok(self
            .minors_on_rows(&rows)
            .into_iter()
            .enumerate()
            .filter(|(mask, _)| mask.count_ones() as usize == self.rows)
            .filter_map(|(_, m)| m)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldCtx, PrimeField, Rationals, Q};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn var(n: usize, i: usize) -> MultiPoly<Q> {
        MultiPoly::var(n, i, Rationals::default().one())
    }

    #[test]
    fn det_two_by_two_symmetric() {
        let (x, y, z) = (var(3, 0), var(3, 1), var(3, 2));
        let m = PolyMat::from_rows(3, vec![vec![x.clone(), y.clone()], vec![y.clone(), z.clone()]])
            .unwrap();
        assert_eq!(m.det().unwrap(), &(&x * &z) - &(&y * &y));
    }

    #[test]
    fn adjugate_two_by_two() {
        let v: Vec<_> = (0..4).map(|i| var(4, i)).collect();
        let m = PolyMat::from_rows(4, vec![vec![v[0].clone(), v[1].clone()], vec![v[2].clone(), v[3].clone()]])
            .unwrap();
        let adj = m.adjugate().unwrap();
        assert_eq!(adj.get(0, 0), &v[3]);
        assert_eq!(adj.get(0, 1), &-&v[1]);
        assert_eq!(adj.get(1, 0), &-&v[2]);
        assert_eq!(adj.get(1, 1), &v[0]);
    }

    #[test]
    fn diagonal_det_is_product() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let forms: Vec<MultiPoly<_>> = (0..8)
            .map(|_| MultiPoly::linear_form(&(0..4).map(|_| f.random(&mut rng)).collect::<Vec<_>>()))
            .collect();
        let m = PolyMat::from_fn(8, 8, 4, |i, j| if i == j { forms[i].clone() } else { MultiPoly::zero(4) });
        let prod = forms.iter().skip(1).fold(forms[0].clone(), |acc, l| &acc * l);
        assert_eq!(m.det().unwrap(), prod);
    }

    #[test]
    fn non_square_is_rejected() {
        let m = PolyMat::from_fn(2, 3, 1, |_, _| var(1, 0));
        assert_eq!(m.det(), Err(PolyError::NotSquare { rows: 2, cols: 3 }));
        assert!(m.adjugate().is_err());
    }

    #[test]
    fn laplace_identity_on_random_linear_forms() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..3 {
            let m = PolyMat::from_fn(4, 4, 3, |_, _| {
                MultiPoly::linear_form(&(0..3).map(|_| f.random(&mut rng)).collect::<Vec<_>>())
            });
            let det = m.det().unwrap();
            let lhs = m.mul(&m.adjugate().unwrap()).unwrap();
            let rhs = PolyMat::identity(4, 3, f.one()).scale(&det);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn maximal_minor_count() {
        let m = PolyMat::from_fn(4, 5, 2, |i, j| var(2, (i + j) % 2));
        assert_eq!(m.maximal_minors().unwrap().len(), 5);
    }
}

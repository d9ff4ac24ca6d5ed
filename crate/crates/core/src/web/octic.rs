use num_traits::Zero;

use super::{Web, WebError, WEB_SIZE};
use crate::arith::Field;
use crate::linalg::Mat;
use crate::poly::{Monomial, MultiPoly, PolyMat};

/// The determinantal surface `det(sum lambda_i Q_i) = 0` in `P^3`.
#[derive(Clone, Debug, PartialEq)]
pub struct OcticSurface<S: Field> {
    det_poly: MultiPoly<S>,
    gradient: Vec<MultiPoly<S>>,
}

impl<S: Field> OcticSurface<S> {
    fn from_det(det_poly: MultiPoly<S>) -> Result<Self, WebError> {
        if det_poly.is_zero() {
            return Err(WebError::Degenerate { attempts: 1, reason: "determinant vanishes identically".into() });
        }
        if det_poly.homogeneous_degree() != Some(8) {
            return Err(WebError::InvariantViolated(format!(
                "determinant is not homogeneous of degree 8 (degree {:?})",
                det_poly.total_degree()
            )));
        }
        let gradient = det_poly.grad();
        Ok(OcticSurface { det_poly, gradient })
    }

    pub fn det_poly(&self) -> &MultiPoly<S> {
        &self.det_poly
    }

    pub fn gradient(&self) -> &[MultiPoly<S>] {
        &self.gradient
    }

    pub fn eval(&self, lambda: &[S]) -> Result<S, WebError> {
        Ok(self.det_poly.eval(lambda)?)
    }

    pub fn gradient_at(&self, lambda: &[S]) -> Result<Vec<S>, WebError> {
        self.gradient.iter().map(|g| g.eval(lambda).map_err(WebError::from)).collect()
    }

    /// All four partials vanish: `lambda` is a singular point of the octic
    /// (when it lies on it).
    pub fn is_singular_at(&self, lambda: &[S]) -> Result<bool, WebError> {
        Ok(self.gradient_at(lambda)?.iter().all(Zero::is_zero))
    }
}

/// Symbolic determinant of `sum lambda_i Q_i` by minor expansion.
pub fn det_octic<S: Field>(web: &Web<S>) -> Result<OcticSurface<S>, WebError> {
    let m = PolyMat::linear_combination(web.quadrics());
    OcticSurface::from_det(m.det()?)
}

const GRID: usize = 9;

/// The same octic by evaluation on the grid `{0..8}^3 x {1}` and tensor
/// interpolation. Needs characteristic > 8.
pub fn det_octic_interpolated<S: Field>(web: &Web<S>) -> Result<OcticSurface<S>, WebError> {
    let one = some_one(web);
    if let Some(p) = one.modulus() {
        if p <= 8 {
            return Err(WebError::Precondition(format!("interpolation grid needs characteristic > 8, got {p}")));
        }
    }
    let nodes: Vec<S> = (0..GRID as i64).map(|i| one.int_like(i)).collect();
    // values[i][j][k] = det M(i, j, k, 1)
    let mut values = vec![one.int_like(0); GRID * GRID * GRID];
    for i in 0..GRID {
        for j in 0..GRID {
            for k in 0..GRID {
                let lambda = [nodes[i].clone(), nodes[j].clone(), nodes[k].clone(), one.clone()];
                values[(i * GRID + j) * GRID + k] = web.matrix_at(&lambda).det()?;
            }
        }
    }
    let inv_vdm = Mat::from_fn(GRID, GRID, |i, e| nodes[i].pow(e as u64)).inverse()?;
    // interpolate along each axis in turn
    let mut coeffs = values;
    for axis in 0..3 {
        let stride = GRID.pow(2 - axis as u32);
        let mut next = coeffs.clone();
        for base in 0..GRID * GRID * GRID {
            if !(base / stride).is_multiple_of(GRID) {
                continue;
            }
            let line: Vec<S> = (0..GRID).map(|t| coeffs[base + t * stride].clone()).collect();
            let solved = inv_vdm.mul_vec(&line)?;
            for (t, c) in solved.into_iter().enumerate() {
                next[base + t * stride] = c;
            }
        }
        coeffs = next;
    }
    let mut terms = Vec::new();
    for a in 0..GRID {
        for b in 0..GRID {
            for c in 0..GRID {
                let v = coeffs[(a * GRID + b) * GRID + c].clone();
                if v.is_zero() {
                    continue;
                }
                if a + b + c > 8 {
                    return Err(WebError::InvariantViolated("interpolated determinant has degree > 8".into()));
                }
                let e = [a as u16, b as u16, c as u16, (8 - a - b - c) as u16];
                terms.push((Monomial::from_exponents(&e), v));
            }
        }
    }
    OcticSurface::from_det(MultiPoly::from_terms(WEB_SIZE, terms))
}

fn some_one<S: Field>(web: &Web<S>) -> S {
    web.quadrics()
        .iter()
        .flat_map(|q| (0..q.rows()).flat_map(move |i| (0..q.cols()).map(move |j| q[(i, j)].clone())))
        .find(|x| !x.is_zero())
        .map(|x| x.int_like(1))
        .expect("web quadrics are nonzero")
}

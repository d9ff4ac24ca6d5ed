//! The quadric -> points map and its inverse.
//!
//! A member `Q` containing the plane `P` contains every 3-space `V ⊃ P`
//! on which it vanishes; all such `V` lie in the tangent hull
//! `H = {x : x^T Q P = 0}` (dimension 5). The form induced on `H / P` is a
//! binary quadratic whose zero lines are exactly those 3-spaces. Each `V`
//! meets the base locus in `P` plus a residual set cut out by four linear
//! forms.

use num_traits::Zero;

use super::{Plane, Web, WebError, WebMember, AMBIENT};
use crate::arith::Field;
use crate::linalg::{normalize_projective, Mat, Subspace};

/// `a y0^2 + 2 b y0 y1 + c y1^2` on the quotient `H / P`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<S: Field> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Field> BinaryForm<S> {
    /// `b^2 - a c`.
    pub fn discriminant(&self) -> S {
        self.b.clone() * self.b.clone() - self.a.clone() * self.c.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn eval(&self, s: &S, t: &S) -> S {
        self.a.clone() * s.clone() * s.clone()
            + self.b.mul_int(2) * s.clone() * t.clone()
            + self.c.clone() * t.clone() * t.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Splitting {
    /// Nonzero square discriminant: two distinct 3-spaces.
    Two,
    /// Zero discriminant: one (double) 3-space.
    Double,
    /// Discriminant is not a square in the field; the two 3-spaces are
    /// conjugate and not constructed.
    ConjugatePair,
}

/// The eight possible shapes of `BS ∩ V` for a 3-space `V ⊃ P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum ResidualTag {
    PointOffPlane,
    PointOnPlane,
    LineProper,
    LineOnPlane,
    DoublePlane,
    TwoPlanes,
    All,
    PlaneOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualIntersection<S: Field> {
    pub tag: ResidualTag,
    /// Point, line or plane spanning the residual component, in `S^8`.
    /// Empty for `All` and `PlaneOnly`.
    pub witness: Vec<Vec<S>>,
    /// Rank of the 4x4 coefficient matrix of the residual linear forms.
    pub form_rank: usize,
}

impl<S: Field> ResidualIntersection<S> {
    pub fn point(&self) -> Option<&[S]> {
        matches!(self.tag, ResidualTag::PointOffPlane | ResidualTag::PointOnPlane)
            .then(|| self.witness[0].as_slice())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceResult<S: Field> {
    pub binary_form: BinaryForm<S>,
    pub discriminant: S,
    pub hull: Subspace<S>,
    pub splitting: Splitting,
    /// One or two 3-spaces (projective), empty for a conjugate pair.
    pub three_spaces: Vec<Subspace<S>>,
    /// Residual intersection of each 3-space with the base locus.
    pub residuals: Vec<ResidualIntersection<S>>,
}

impl<S: Field> CorrespondenceResult<S> {
    /// Residual points, in the order of `three_spaces`.
    pub fn points(&self) -> Vec<Vec<S>> {
        self.residuals.iter().filter_map(|r| r.point().map(<[S]>::to_vec)).collect()
    }

    /// All residuals are single points.
    pub fn all_points(&self) -> bool {
        self.residuals.iter().all(|r| r.point().is_some())
    }
}

/// `{x : x^T M(lambda) B = 0}` for the plane basis `B`; 5-dimensional when
/// `M(lambda) B` has rank 3.
pub fn tangent_hull<S: Field>(member: &WebMember<S>, plane: &Plane<S>) -> Result<Subspace<S>, WebError> {
    let mb = member.matrix().mul(plane.basis())?;
    let rank = mb.rank();
    if rank < 3 {
        return Err(WebError::NonGeneric(format!("M(lambda) B has rank {rank} < 3")));
    }
    Ok(mb.transpose().kernel())
}

/// The map from a web member to its residual points.
pub fn quadric_to_points<S: Field>(
    web: &Web<S>,
    member: &WebMember<S>,
) -> Result<CorrespondenceResult<S>, WebError> {
    let plane = web.require_plane()?;
    let m = member.matrix();
    let hull = tangent_hull(member, plane)?;
    let quotient = hull.complement_in(plane.space());
    debug_assert_eq!(quotient.len(), 2);
    let (u0, u1) = (&quotient[0], &quotient[1]);

    // entries pairing P-directions with H vanish by construction of H
    for h in hull.vectors() {
        for b in plane.space().vectors() {
            if !m.bilinear(&h, &b)?.is_zero() {
                return Err(WebError::InvariantViolated("tangent hull is not orthogonal to P".into()));
            }
        }
    }
    let form = BinaryForm { a: m.bilinear(u0, u0)?, b: m.bilinear(u0, u1)?, c: m.bilinear(u1, u1)? };
    if form.is_zero() {
        return Err(WebError::NonGeneric("binary form vanishes: pencil of 3-spaces in the quadric".into()));
    }
    let disc = form.discriminant();
    let (splitting, directions) = isotropic_directions(&form, &disc);

    let mut three_spaces = Vec::new();
    let mut residuals = Vec::new();
    for (s, t) in directions {
        let w: Vec<S> = u0.iter().zip(u1).map(|(x, y)| s.clone() * x.clone() + t.clone() * y.clone()).collect();
        let v = plane.space().join_point(&w)?;
        let res = residual_intersection(web, &v)?;
        if let Some(p) = res.point() {
            if !web.in_base_locus(p)? {
                return Err(WebError::InvariantViolated("residual point is not in the base locus".into()));
            }
        }
        three_spaces.push(v);
        residuals.push(res);
    }
    Ok(CorrespondenceResult { binary_form: form, discriminant: disc, hull, splitting, three_spaces, residuals })
}

/// Directions `(s, t)` with `a s^2 + 2 b s t + c t^2 = 0`.
fn isotropic_directions<S: Field>(f: &BinaryForm<S>, disc: &S) -> (Splitting, Vec<(S, S)>) {
    let one = [&f.a, &f.b, &f.c].into_iter().find(|x| !x.is_zero()).expect("form is nonzero").int_like(1);
    let zero = one.int_like(0);
    if disc.is_zero() {
        let dir = if !f.a.is_zero() { (-f.b.clone(), f.a.clone()) } else { (one, zero) };
        return (Splitting::Double, vec![dir]);
    }
    let Some(r) = disc.exact_sqrt() else {
        return (Splitting::ConjugatePair, Vec::new());
    };
    let dirs = if !f.a.is_zero() {
        vec![(-f.b.clone() + r.clone(), f.a.clone()), (-f.b.clone() - r, f.a.clone())]
    } else if !f.c.is_zero() {
        // t (2 b s + c t) = 0
        vec![(one, zero), (-f.c.clone(), f.b.mul_int(2))]
    } else {
        vec![(one.clone(), zero.clone()), (zero, one)]
    };
    (Splitting::Two, dirs)
}

/// Basis `[w, B]` of a 3-space `V ⊃ P` with `w` completing the plane basis,
/// and the residual linear forms `f_i` with `Q_i|_V = z0 * f_i`, as the rows
/// of a 4x4 matrix in coordinates `(z0; z1, z2, z3)`.
fn residual_forms<S: Field>(web: &Web<S>, v: &Subspace<S>) -> Result<(Mat<S>, Mat<S>), WebError> {
    let plane = web.require_plane()?;
    if v.ambient() != AMBIENT || v.dim() != 4 || !v.contains_subspace(plane.space()) {
        return Err(WebError::Precondition("3-space must contain the plane".into()));
    }
    let w = v.complement_in(plane.space()).pop().expect("dim 4 over dim 3");
    let mut cols = vec![w];
    cols.extend(plane.space().vectors());
    let basis = Mat::from_columns(AMBIENT, &cols);
    let mut rows = Vec::with_capacity(4);
    for q in web.quadrics() {
        let r = q.restrict_to_basis(&basis)?;
        for i in 1..4 {
            for j in 1..4 {
                if !r[(i, j)].is_zero() {
                    return Err(WebError::Precondition("restricted quadric is not divisible by z0".into()));
                }
            }
        }
        rows.push(vec![r[(0, 0)].clone(), r[(0, 1)].mul_int(2), r[(0, 2)].mul_int(2), r[(0, 3)].mul_int(2)]);
    }
    Ok((basis, Mat::from_rows(rows)?))
}

/// Classify `BS ∩ V` for a 3-space `V` containing the plane.
pub fn residual_intersection<S: Field>(web: &Web<S>, v: &Subspace<S>) -> Result<ResidualIntersection<S>, WebError> {
    let (basis, forms) = residual_forms(web, v)?;
    classify_forms(&basis, &forms)
}

fn classify_forms<S: Field>(basis: &Mat<S>, forms: &Mat<S>) -> Result<ResidualIntersection<S>, WebError> {
    let kernel = forms.kernel();
    let rank = 4 - kernel.dim();
    let lift = |z: &[S]| -> Result<Vec<S>, WebError> { Ok(basis.mul_vec(z)?) };
    let lifted = |ks: &[Vec<S>]| -> Result<Vec<Vec<S>>, WebError> { ks.iter().map(|k| lift(k)).collect() };
    let (tag, witness) = match rank {
        4 => (ResidualTag::PlaneOnly, Vec::new()),
        3 => {
            let z = kernel.vectors().pop().expect("one kernel vector");
            let p = normalize_projective(&lift(&z)?).expect("basis is injective");
            let tag = if z[0].is_zero() { ResidualTag::PointOnPlane } else { ResidualTag::PointOffPlane };
            (tag, vec![p])
        }
        2 => {
            let ks = kernel.vectors();
            let on_plane = ks.iter().all(|k| k[0].is_zero());
            let tag = if on_plane { ResidualTag::LineOnPlane } else { ResidualTag::LineProper };
            (tag, lifted(&ks)?)
        }
        1 => {
            let f = (0..4).map(|i| forms.row(i)).find(|r| r.iter().any(|x| !x.is_zero())).expect("rank 1");
            let double = f[1..].iter().all(Zero::is_zero);
            let tag = if double { ResidualTag::DoublePlane } else { ResidualTag::TwoPlanes };
            (tag, lifted(&kernel.vectors())?)
        }
        _ => (ResidualTag::All, Vec::new()),
    };
    Ok(ResidualIntersection { tag, witness, form_rank: rank })
}

/// The map from a base-locus point to the unique member whose 3-space
/// through `P` contains it.
pub fn point_to_quadric<S: Field>(web: &Web<S>, p: &[S]) -> Result<WebMember<S>, WebError> {
    let plane = web.require_plane()?;
    if p.len() != AMBIENT || !web.in_base_locus(p)? {
        return Err(WebError::Precondition("point is not in the base locus".into()));
    }
    let c = if plane.contains(p) {
        // tangent space of the base locus at a smooth point of P
        let t = web.jacobian_at(p)?.kernel();
        if t.dim() != 4 {
            return Err(WebError::NonGeneric(format!(
                "tangent space at point of P has dimension {} (singular point)",
                t.dim()
            )));
        }
        t
    } else {
        plane.space().join_point(p)?
    };
    let (_, forms) = residual_forms(web, &c)?;
    let lk = forms.left_kernel();
    if lk.dim() != 1 {
        return Err(WebError::NonUniqueQuadric(lk.dim()));
    }
    let lambda = lk.vectors().pop().expect("one vector");
    let check = Mat::from_rows(vec![lambda.clone()])?.mul(&forms)?;
    if !check.is_zero() {
        return Err(WebError::InvariantViolated("sum lambda_i f_i != 0".into()));
    }
    WebMember::new(web, &lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldCtx, PrimeField, Rationals};

    fn e<C: FieldCtx>(ctx: &C, k: usize) -> Vec<C::Elem> {
        (0..4).map(|i| if i == k { ctx.one() } else { ctx.zero() }).collect()
    }

    fn basis4<C: FieldCtx>(ctx: &C) -> Mat<C::Elem> {
        Mat::identity(ctx, 4)
    }

    fn forms<C: FieldCtx>(ctx: &C, rows: &[[i64; 4]]) -> Mat<C::Elem> {
        let mut rs: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| ctx.elem(x)).collect()).collect();
        while rs.len() < 4 {
            rs.push(vec![ctx.zero(); 4]);
        }
        Mat::from_rows(rs).unwrap()
    }

    #[test]
    fn forced_point_off_plane() {
        let q = Rationals::default();
        let r = classify_forms(&basis4(&q), &forms(&q, &[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])).unwrap();
        assert_eq!(r.tag, ResidualTag::PointOffPlane);
        assert_eq!(r.witness, vec![e(&q, 0)]);
    }

    #[test]
    fn point_on_plane() {
        let q = Rationals::default();
        let r = classify_forms(&basis4(&q), &forms(&q, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])).unwrap();
        assert_eq!(r.tag, ResidualTag::PointOnPlane);
    }

    #[test]
    fn line_cases() {
        let q = Rationals::default();
        let r = classify_forms(&basis4(&q), &forms(&q, &[[0, 1, 0, 0], [0, 0, 1, 0]])).unwrap();
        assert_eq!(r.tag, ResidualTag::LineProper);
        let r = classify_forms(&basis4(&q), &forms(&q, &[[1, 0, 0, 0], [0, 0, 1, 0]])).unwrap();
        assert_eq!(r.tag, ResidualTag::LineOnPlane);
    }

    #[test]
    fn plane_cases() {
        let q = Rationals::default();
        let r = classify_forms(&basis4(&q), &forms(&q, &[[3, 0, 0, 0], [1, 0, 0, 0]])).unwrap();
        assert_eq!(r.tag, ResidualTag::DoublePlane);
        let r = classify_forms(&basis4(&q), &forms(&q, &[[0, 1, 1, 0]])).unwrap();
        assert_eq!(r.tag, ResidualTag::TwoPlanes);
        let r = classify_forms(&basis4(&q), &forms(&q, &[])).unwrap();
        assert_eq!(r.tag, ResidualTag::All);
        let r = classify_forms(&basis4(&q), &Mat::identity(&q, 4)).unwrap();
        assert_eq!(r.tag, ResidualTag::PlaneOnly);
    }

    #[test]
    fn double_and_split_directions() {
        let f = PrimeField::new(13).unwrap();
        // y0^2 + y1^2 over F_13: -1 = 5^2, two directions
        let form = BinaryForm { a: f.one(), b: f.zero(), c: f.one() };
        let (s, dirs) = isotropic_directions(&form, &form.discriminant());
        assert_eq!(s, Splitting::Two);
        for (x, y) in &dirs {
            assert!(form.eval(x, y).is_zero());
        }
        // over F_7, -1 is not a square
        let f7 = PrimeField::new(7).unwrap();
        let form = BinaryForm { a: f7.one(), b: f7.zero(), c: f7.one() };
        assert_eq!(isotropic_directions(&form, &form.discriminant()).0, Splitting::ConjugatePair);
        // (y0 + y1)^2
        let form = BinaryForm { a: f.one(), b: f.one(), c: f.one() };
        let (s, dirs) = isotropic_directions(&form, &form.discriminant());
        assert_eq!(s, Splitting::Double);
        assert!(form.eval(&dirs[0].0, &dirs[0].1).is_zero());
        // a = 0 branch
        let form = BinaryForm { a: f.zero(), b: f.elem(2), c: f.elem(5) };
        let (_, dirs) = isotropic_directions(&form, &form.discriminant());
        assert_eq!(dirs.len(), 2);
        for (x, y) in &dirs {
            assert!(form.eval(x, y).is_zero());
        }
    }
}

//! Nodes of the octic coming from the plane: members `M(lambda)` whose
//! kernel is a point `a` of `P`. For `a` in `P` the condition
//! `M(lambda) a = 0` is four-by-five linear in `lambda`, so such `a` are the
//! points where the 4x5 matrix `A(a)` drops rank.

use num_traits::Zero;
use rayon::prelude::*;

use super::{OcticSurface, Web, WebError, AMBIENT, WEB_SIZE};
use crate::arith::{Field, FieldCtx, Fp, PrimeField, UniPoly};
use crate::linalg::{normalize_projective, Mat};
use crate::poly::{MultiPoly, PolyMat};

#[derive(Clone, Debug, PartialEq)]
pub struct NodeRecord<S: Field> {
    /// Coordinates `(t0 : t1 : t2)` of the kernel point on the plane.
    pub plane_coords: Vec<S>,
    /// The kernel point in `P^7`.
    pub point: Vec<S>,
    /// The node on the octic.
    pub lambda: Vec<S>,
    pub jacobian_rank: usize,
    pub member_rank: usize,
    pub kernel_on_plane: bool,
    pub annihilates_point: bool,
    pub gradient_vanishes: bool,
}

/// The 4x5 matrix `A(t)` in the variables `t0, t1, t2` of the plane, whose
/// row `i` holds the first five coordinates of `2 Q_i' a(t)` in a frame
/// adapted to the plane.
pub fn node_jacobian<C: FieldCtx>(ctx: &C, web: &Web<C::Elem>) -> Result<(PolyMat<C::Elem>, Mat<C::Elem>), WebError> {
    let plane = web.require_plane()?;
    let g = plane.frame(ctx);
    let mut rows = Vec::with_capacity(WEB_SIZE);
    for q in web.quadrics() {
        let qp = q.restrict_to_basis(&g)?;
        let row = (0..5)
            .map(|j| {
                let coeffs: Vec<C::Elem> = (5..AMBIENT).map(|k| qp[(j, k)].mul_int(2)).collect();
                MultiPoly::linear_form(&coeffs)
            })
            .collect();
        rows.push(row);
    }
    Ok((PolyMat::from_rows(3, rows)?, g))
}

fn node_record<C: FieldCtx>(
    web: &Web<C::Elem>,
    octic: &OcticSurface<C::Elem>,
    a_of_t: &PolyMat<C::Elem>,
    frame: &Mat<C::Elem>,
    t: Vec<C::Elem>,
) -> Result<NodeRecord<C::Elem>, WebError> {
    let a = a_of_t.eval(&t)?;
    let rk = a.rank_kernel();
    if rk.left_kernel.dim() != 1 {
        return Err(WebError::NonGeneric(format!(
            "A(t) at {t:?} has left kernel of dimension {}",
            rk.left_kernel.dim()
        )));
    }
    let lambda = normalize_projective(&rk.left_kernel.vectors()[0]).expect("nonzero kernel vector");
    let mut y = vec![t[0].int_like(0); AMBIENT];
    y[5..].clone_from_slice(&t);
    let point = normalize_projective(&frame.mul_vec(&y)?).expect("frame is invertible");
    let member = web.member(&lambda)?;
    let annihilates_point = member.matrix().mul_vec(&point)?.iter().all(Zero::is_zero);
    let mk = member.matrix().rank_kernel();
    let plane = web.require_plane()?;
    let kernel_on_plane = mk.kernel.dim() == 1 && plane.contains(&mk.kernel.vectors()[0]);
    let gradient_vanishes = octic.eval(&lambda)?.is_zero() && octic.is_singular_at(&lambda)?;
    Ok(NodeRecord {
        plane_coords: t,
        point,
        lambda,
        jacobian_rank: rk.rank,
        member_rank: mk.rank,
        kernel_on_plane,
        annihilates_point,
        gradient_vanishes,
    })
}

/// All `F_p`-rational kernel points on the plane, found fibre by fibre:
/// for each `t1` the five minors restricted to `t2 = 1` have a common root
/// set given by the roots of their gcd in `t0`; the line `t2 = 0` is
/// handled the same way. Returns points in scan order.
pub fn node_census(web: &Web<Fp>, octic: &OcticSurface<Fp>, ctx: &PrimeField) -> Result<Vec<NodeRecord<Fp>>, WebError> {
    let (a_of_t, frame) = node_jacobian(ctx, web)?;
    let minors = a_of_t.maximal_minors()?;
    // minor as a polynomial in t0 whose coefficients are univariates in t1, at t2 = 1
    let split: Vec<Vec<UniPoly<Fp>>> = minors.iter().map(|m| coefficients_in_t0(ctx, m)).collect();
    let p = ctx.p();
    let points: Vec<Vec<Vec<Fp>>> = (0..p)
        .into_par_iter()
        .map(|t1| -> Result<Vec<Vec<Fp>>, WebError> {
            let t1 = ctx.residue(t1);
            let fibre: Vec<UniPoly<Fp>> = split
                .iter()
                .map(|cs| UniPoly::new(cs.iter().map(|c| c.eval(&t1)).collect()))
                .collect();
            Ok(common_roots(&fibre)?.into_iter().map(|t0| vec![t0, t1, ctx.one()]).collect())
        })
        .collect::<Result<_, _>>()?;
    let mut found: Vec<Vec<Fp>> = points.into_iter().flatten().collect();
    // t2 = 0, t1 = 1
    let line: Vec<UniPoly<Fp>> = minors
        .iter()
        .map(|m| m.restrict_to_line(&[ctx.zero(), ctx.one(), ctx.zero()], &[ctx.one(), ctx.zero(), ctx.zero()]))
        .collect::<Result<_, _>>()?;
    found.extend(common_roots(&line)?.into_iter().map(|t0| vec![t0, ctx.one(), ctx.zero()]));
    let corner = [ctx.one(), ctx.zero(), ctx.zero()];
    if minors.iter().map(|m| m.eval(&corner)).collect::<Result<Vec<_>, _>>()?.iter().all(Zero::is_zero) {
        found.push(corner.to_vec());
    }
    found.into_iter().map(|t| node_record::<PrimeField>(web, octic, &a_of_t, &frame, t)).collect()
}

/// Same census by evaluating `A(t)` at every point of `P^2(F_p)`.
/// Only sensible for small `p`.
pub fn node_census_brute(
    web: &Web<Fp>,
    octic: &OcticSurface<Fp>,
    ctx: &PrimeField,
) -> Result<Vec<NodeRecord<Fp>>, WebError> {
    let (a_of_t, frame) = node_jacobian(ctx, web)?;
    let p = ctx.p();
    let mut pts: Vec<Vec<Fp>> = Vec::new();
    for t1 in 0..p {
        for t0 in 0..p {
            pts.push(vec![ctx.residue(t0), ctx.residue(t1), ctx.one()]);
        }
    }
    for t0 in 0..p {
        pts.push(vec![ctx.residue(t0), ctx.one(), ctx.zero()]);
    }
    pts.push(vec![ctx.one(), ctx.zero(), ctx.zero()]);
    let mut out = Vec::new();
    for t in pts {
        if a_of_t.eval(&t)?.rank() < 4 {
            out.push(node_record::<PrimeField>(web, octic, &a_of_t, &frame, t)?);
        }
    }
    Ok(out)
}

fn coefficients_in_t0(ctx: &PrimeField, m: &MultiPoly<Fp>) -> Vec<UniPoly<Fp>> {
    let deg = m.total_degree().unwrap_or(0) as usize;
    let mut table = vec![vec![ctx.zero(); deg + 1]; deg + 1];
    for (mono, c) in m.terms() {
        let e = mono.exponents();
        table[e[0] as usize][e[1] as usize] = table[e[0] as usize][e[1] as usize] + *c;
    }
    table.into_iter().map(UniPoly::new).collect()
}

fn common_roots(polys: &[UniPoly<Fp>]) -> Result<Vec<Fp>, WebError> {
    let mut g = UniPoly::zero();
    for f in polys {
        g = g.gcd(f)?;
        if g.degree() == Some(0) {
            return Ok(Vec::new());
        }
    }
    if g.is_zero() {
        return Err(WebError::NonGeneric("all minors vanish along a fibre".into()));
    }
    Ok(g.roots()?)
}

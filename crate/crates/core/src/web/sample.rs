use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{OcticSurface, Plane, Web, WebError, AMBIENT, WEB_SIZE};
use crate::arith::{FieldCtx, Fp, PrimeField};
use crate::linalg::Mat;

/// Resampling budget for generic webs and points.
pub const MAX_RESAMPLES: usize = 16;

/// Independent stream `index` derived from `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random symmetric 8x8 matrix; with `plane_block_zero` its restriction
/// to `x0 = ... = x4 = 0` vanishes.
fn random_symmetric<C: FieldCtx, R: Rng + ?Sized>(ctx: &C, rng: &mut R, plane_block_zero: bool) -> Mat<C::Elem> {
    let mut m = Mat::zeros(ctx, AMBIENT, AMBIENT);
    let mut entries = Vec::new();
    for i in 0..AMBIENT {
        for j in i..AMBIENT {
            let v = if plane_block_zero && i >= 5 && j >= 5 { ctx.zero() } else { ctx.random(rng) };
            entries.push((i, j, v));
        }
    }
    for (i, j, v) in entries {
        m[(i, j)] = v.clone();
        m[(j, i)] = v;
    }
    m
}

/// A seeded random web. With a plane, every quadric contains it; a
/// non-standard plane is reached by a change of coordinates.
///
/// Samples are rejected unless the quadrics are independent, a random
/// member is nonsingular and (with a plane) the base locus is smooth at a
/// random point of the plane.
pub fn sample_web<C: FieldCtx>(ctx: &C, seed: u64, plane: Option<Plane<C::Elem>>) -> Result<Web<C::Elem>, WebError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let standard = Plane::standard(ctx);
    let change = match &plane {
        Some(p) if *p != standard => Some(p.frame(ctx).inverse()?),
        _ => None,
    };
    let mut last = String::new();
    for _ in 0..MAX_RESAMPLES {
        let mut qs: Vec<Mat<C::Elem>> =
            (0..WEB_SIZE).map(|_| random_symmetric(ctx, &mut rng, plane.is_some())).collect();
        if let Some(h) = &change {
            // y = H x with H = frame^{-1}
            qs = qs.iter().map(|q| q.restrict_to_basis(h)).collect::<Result<_, _>>()?;
        }
        let web = match Web::new(qs, plane.clone(), Some(seed)) {
            Ok(w) => w,
            Err(WebError::Invalid(r)) => {
                last = r;
                continue;
            }
            Err(e) => return Err(e),
        };
        match check_generic(ctx, &web, &mut rng) {
            Ok(()) => return Ok(web),
            Err(r) => last = r,
        }
    }
    Err(WebError::Degenerate { attempts: MAX_RESAMPLES, reason: last })
}

fn check_generic<C: FieldCtx, R: Rng + ?Sized>(ctx: &C, web: &Web<C::Elem>, rng: &mut R) -> Result<(), String> {
    let lambda: Vec<_> = (0..WEB_SIZE).map(|_| ctx.random(rng)).collect();
    if web.matrix_at(&lambda).det().map_err(|e| e.to_string())?.is_zero() {
        return Err("random member is singular".into());
    }
    if let Some(p) = web.plane() {
        let c: Vec<_> = (0..3).map(|_| ctx.random(rng)).collect();
        let x = p.basis().mul_vec(&c).map_err(|e| e.to_string())?;
        if x.iter().all(|v| v.is_zero()) {
            return Err("zero point on plane".into());
        }
        if web.jacobian_at(&x).map_err(|e| e.to_string())?.rank() < WEB_SIZE {
            return Err("base locus singular at a random point of the plane".into());
        }
    }
    Ok(())
}

/// A random `F_p`-point of the octic: restrict to a random line and pick a
/// random root. Lines without rational roots are resampled.
pub fn sample_octic_point<R: Rng + ?Sized>(
    octic: &OcticSurface<Fp>,
    ctx: &PrimeField,
    rng: &mut R,
) -> Result<Vec<Fp>, WebError> {
    let attempts = 8 * MAX_RESAMPLES;
    for _ in 0..attempts {
        let base: Vec<Fp> = (0..WEB_SIZE).map(|_| ctx.random(rng)).collect();
        let dir: Vec<Fp> = (0..WEB_SIZE).map(|_| ctx.random(rng)).collect();
        let f = octic.det_poly().restrict_to_line(&base, &dir)?;
        if f.is_zero() {
            continue;
        }
        let roots = f.roots()?;
        if roots.is_empty() {
            continue;
        }
        let s = roots[rng.gen_range(0..roots.len())];
        let pt: Vec<Fp> = base.iter().zip(&dir).map(|(b, d)| *b + s * *d).collect();
        if pt.iter().all(|x| x.is_zero()) {
            continue;
        }
        return Ok(pt);
    }
    Err(WebError::Degenerate { attempts, reason: "no rational point found on random lines".into() })
}

/// A web containing the standard plane whose first member `(1,0,0,0)` has
/// rank 6, with kernel off the plane.
pub fn planted_rank6_web<C: FieldCtx>(ctx: &C, seed: u64) -> Result<(Web<C::Elem>, Vec<C::Elem>), WebError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m0 = Mat::zeros(ctx, AMBIENT, AMBIENT);
    for (i, j) in [(0, 5), (1, 6), (2, 7)] {
        m0[(i, j)] = ctx.one();
        m0[(j, i)] = ctx.one();
    }
    let plane = Plane::standard(ctx);
    let mut last = String::new();
    for _ in 0..MAX_RESAMPLES {
        // G maps the plane to itself: its top-right 5x3 block is zero
        let g = Mat::from_fn(AMBIENT, AMBIENT, |i, j| if i < 5 && j >= 5 { ctx.zero() } else { ctx.random(&mut rng) });
        if g.det()?.is_zero() {
            last = "singular change of basis".into();
            continue;
        }
        let mut qs = vec![m0.restrict_to_basis(&g)?];
        qs.extend((1..WEB_SIZE).map(|_| random_symmetric(ctx, &mut rng, true)));
        let web = match Web::new(qs, Some(plane.clone()), Some(seed)) {
            Ok(w) => w,
            Err(WebError::Invalid(r)) => {
                last = r;
                continue;
            }
            Err(e) => return Err(e),
        };
        match check_generic(ctx, &web, &mut rng) {
            Ok(()) => {
                let lambda = vec![ctx.one(), ctx.zero(), ctx.zero(), ctx.zero()];
                return Ok((web, lambda));
            }
            Err(r) => last = r,
        }
    }
    Err(WebError::Degenerate { attempts: MAX_RESAMPLES, reason: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;

    #[test]
    fn sampling_is_deterministic() {
        let f = PrimeField::default();
        let a = sample_web(&f, 7, Some(Plane::standard(&f))).unwrap();
        let b = sample_web(&f, 7, Some(Plane::standard(&f))).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_web(&f, 8, Some(Plane::standard(&f))).unwrap());
    }

    #[test]
    fn trial_streams_differ() {
        let mut a = trial_rng(1, 0);
        let mut b = trial_rng(1, 1);
        assert_ne!(a.gen::<u64>(), b.gen::<u64>());
    }

    #[test]
    fn planted_member_has_rank_six() {
        let q = Rationals::default();
        let (web, lambda) = planted_rank6_web(&q, 3).unwrap();
        assert_eq!(web.matrix_at(&lambda).rank(), 6);
    }
}

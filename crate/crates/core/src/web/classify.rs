use serde::{Deserialize, Serialize};

use super::{OcticSurface, Web, WebError};
use crate::arith::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MemberClass {
    /// Full rank: `lambda` is off the octic.
    Smooth,
    /// Rank 7 with kernel off the plane: a smooth point of the octic.
    OcticSmoothPoint,
    /// Rank at most 6: a singular point of the octic.
    RankLE6,
    /// Rank 7 with kernel inside the plane: a node of the octic.
    Rank7SingOnPlane,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification<S: Field> {
    pub class: MemberClass,
    pub rank: usize,
    /// Kernel basis of `M(lambda)`.
    pub kernel: Vec<Vec<S>>,
    pub gradient_vanishes: bool,
}

/// Classify `M(lambda)` by rank and kernel position, and cross-check against
/// the value and gradient of the octic at `lambda`.
pub fn classify_member<S: Field>(
    web: &Web<S>,
    octic: &OcticSurface<S>,
    lambda: &[S],
) -> Result<Classification<S>, WebError> {
    let member = web.member(lambda)?;
    let rk = member.matrix().rank_kernel();
    let on_octic = octic.eval(member.lambda())?.is_zero();
    if on_octic != (rk.rank < 8) {
        return Err(WebError::InvariantViolated(format!(
            "octic value disagrees with rank {} at {:?}",
            rk.rank,
            member.lambda()
        )));
    }
    let gradient_vanishes = on_octic && octic.is_singular_at(member.lambda())?;
    let kernel = rk.kernel.vectors();
    let class = match rk.rank {
        8 => MemberClass::Smooth,
        7 => {
            let on_plane = web.plane().is_some_and(|p| p.contains(&kernel[0]));
            if on_plane {
                MemberClass::Rank7SingOnPlane
            } else if gradient_vanishes {
                // d/dlambda_i det = c * k^T Q_i k for the kernel vector k
                return Err(WebError::NonGeneric("rank-7 kernel vector lies in the base locus".into()));
            } else {
                MemberClass::OcticSmoothPoint
            }
        }
        _ => MemberClass::RankLE6,
    };
    let expect_singular = matches!(class, MemberClass::RankLE6 | MemberClass::Rank7SingOnPlane);
    if expect_singular && !gradient_vanishes {
        return Err(WebError::InvariantViolated(format!("{class:?} member with nonvanishing octic gradient")));
    }
    Ok(Classification { class, rank: rk.rank, kernel, gradient_vanishes })
}

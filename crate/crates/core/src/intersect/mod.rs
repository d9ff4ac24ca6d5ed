//! Closed-form invariants: Chow rings of products of projective spaces,
//! Euler characteristics of complete intersections and double covers,
//! Hodge numbers of Calabi-Yau threefolds, degrees of symmetric
//! determinantal loci and dimension counts on Grassmannians.
//!
//! Everything is exact integer (or rational) arithmetic.

mod chow;
mod ledger;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

pub use chow::{multiproj_top_degree, ChowClass};
pub use ledger::{grassmannian_dim, incidence_dimension_ledger, vanishing_conditions, LedgerEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectError {
    #[error("class is not of top degree {expected} (degree {got:?})")]
    WrongDegree { expected: usize, got: Option<usize> },
    #[error("Euler characteristic {0} is odd")]
    OddEuler(i64),
    #[error("determinantal degree formula gave non-integer {0}")]
    NonInteger(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// A smooth complete intersection of hypersurfaces of the given degrees in
/// `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIData {
    pub n: usize,
    pub degrees: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIInvariants {
    /// `c_k(T_X) = chern[k] * h^k`.
    pub chern: Vec<BigInt>,
    pub euler: BigInt,
}

/// `c(T_X) = (1+h)^{n+1} / prod (1 + d_i h)` truncated at `dim X`, and
/// `chi = deg(c_top) = c_top * prod d_i`.
pub fn euler_complete_intersection(ci: &CIData) -> Result<CIInvariants, IntersectError> {
    let k = ci.degrees.len();
    if k > ci.n || ci.degrees.contains(&0) {
        return Err(IntersectError::Invalid(format!("{k} hypersurfaces of degrees {:?} in P^{}", ci.degrees, ci.n)));
    }
    let m = ci.n - k;
    let mut series: Vec<BigInt> = (0..=m).map(|j| binomial(BigInt::from(ci.n + 1), BigInt::from(j))).collect();
    for &d in &ci.degrees {
        // multiply by 1 / (1 + d h) = sum (-d)^j h^j
        let d = BigInt::from(d);
        for j in 1..=m {
            let prev = series[j - 1].clone();
            series[j] -= &d * prev;
        }
    }
    let prod: BigInt = ci.degrees.iter().map(|&d| BigInt::from(d)).product();
    let euler = &series[m] * prod;
    Ok(CIInvariants { chern: series, euler })
}

/// Degree and codimension of the locus of symmetric `n x n` matrices of
/// rank at most `r`:
/// `prod_{a=0}^{n-r-1} C(n+a, n-r-a) / C(2a+1, a)`, codimension
/// `C(n-r+1, 2)`.
pub fn harris_tu_symmetric_degree(n: u64, r: u64) -> Result<(BigInt, u64), IntersectError> {
    if r == 0 || r >= n {
        return Err(IntersectError::Invalid(format!("need 0 < r < n, got n = {n}, r = {r}")));
    }
    let mut acc = BigRational::one();
    for a in 0..n - r {
        let num = binomial(BigInt::from(n + a), BigInt::from(n - r - a));
        let den = binomial(BigInt::from(2 * a + 1), BigInt::from(a));
        acc *= BigRational::new(num, den);
    }
    if !acc.is_integer() {
        return Err(IntersectError::NonInteger(acc.to_string()));
    }
    let codim = (n - r + 1) * (n - r) / 2;
    Ok((acc.to_integer(), codim))
}

/// `chi` of the double cover of `P^3` branched along a smooth surface of
/// the given degree: `2 (chi(P^3) - chi(S)) + chi(S)`.
pub fn double_cover_euler(branch_degree: u64) -> Result<BigInt, IntersectError> {
    let s = euler_complete_intersection(&CIData { n: 3, degrees: vec![branch_degree] })?.euler;
    Ok(BigInt::from(2) * (BigInt::from(4) - &s) + s)
}

/// Each node adds one to `chi` passing from the smoothing to the nodal
/// model, and one more passing to a small resolution.
pub fn nodal_euler_chain(chi_smooth: i64, nodes: i64) -> Result<(i64, i64), IntersectError> {
    if nodes < 0 {
        return Err(IntersectError::Invalid(format!("negative node count {nodes}")));
    }
    Ok((chi_smooth + nodes, chi_smooth + 2 * nodes))
}

/// `h^{1,2} = h^{1,1} - chi / 2` for a Calabi-Yau threefold.
pub fn hodge_from_euler(chi: i64, h11: i64) -> Result<i64, IntersectError> {
    if chi % 2 != 0 {
        return Err(IntersectError::OddEuler(chi));
    }
    Ok(h11 - chi / 2)
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;

    #[test]
    fn projective_space_euler_is_n_plus_one() {
        for n in 0..12 {
            let r = euler_complete_intersection(&CIData { n, degrees: vec![] }).unwrap();
            assert_eq!(r.euler, BigInt::from(n + 1));
        }
    }

    #[test]
    fn elliptic_curve_has_zero_euler() {
        let r = euler_complete_intersection(&CIData { n: 3, degrees: vec![2, 2] }).unwrap();
        assert!(r.euler.is_zero());
    }

    #[test]
    fn quintic_threefold() {
        let r = euler_complete_intersection(&CIData { n: 4, degrees: vec![5] }).unwrap();
        assert_eq!(r.euler, BigInt::from(-200));
    }

    #[test]
    fn too_many_hypersurfaces() {
        assert!(euler_complete_intersection(&CIData { n: 2, degrees: vec![1, 1, 1] }).is_err());
    }

    #[test]
    fn harris_tu_small_cases() {
        assert_eq!(harris_tu_symmetric_degree(2, 1).unwrap(), (BigInt::from(2), 1));
        assert_eq!(harris_tu_symmetric_degree(3, 1).unwrap(), (BigInt::from(4), 3));
        // the discriminant of symmetric n x n matrices has degree n
        for n in 2..10 {
            assert_eq!(harris_tu_symmetric_degree(n, n - 1).unwrap(), (BigInt::from(n), 1));
        }
        assert!(harris_tu_symmetric_degree(3, 3).is_err());
        assert!(harris_tu_symmetric_degree(3, 0).is_err());
    }

    #[test]
    fn harris_tu_is_integral() {
        for n in 2..=10 {
            for r in 1..n {
                harris_tu_symmetric_degree(n, r).unwrap();
            }
        }
    }

    #[test]
    fn hodge_rejects_odd_euler() {
        assert_eq!(hodge_from_euler(0, 7).unwrap(), 7);
        assert_eq!(hodge_from_euler(-3, 1), Err(IntersectError::OddEuler(-3)));
    }

    #[test]
    fn negative_nodes_rejected() {
        assert!(nodal_euler_chain(0, -1).is_err());
    }
}

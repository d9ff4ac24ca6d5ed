use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntersectError;

/// A class in `Z[h_1, ..., h_k] / (h_i^{n_i + 1})`, the Chow ring of
/// `P^{n_1} x ... x P^{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    dims: Vec<usize>,
    coeffs: BTreeMap<Vec<usize>, BigInt>,
}

impl ChowClass {
    pub fn zero(dims: &[usize]) -> Self {
        ChowClass { dims: dims.to_vec(), coeffs: BTreeMap::new() }
    }

    pub fn one(dims: &[usize]) -> Self {
        Self::monomial(dims, &vec![0; dims.len()], BigInt::one())
    }

    /// The hyperplane class of factor `i`.
    pub fn hyperplane(dims: &[usize], i: usize) -> Self {
        let mut e = vec![0; dims.len()];
        e[i] = 1;
        Self::monomial(dims, &e, BigInt::one())
    }

    pub fn monomial(dims: &[usize], exps: &[usize], c: BigInt) -> Self {
        let mut out = Self::zero(dims);
        out.add_term(exps.to_vec(), c);
        out
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coefficient(&self, exps: &[usize]) -> BigInt {
        self.coeffs.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, exps: Vec<usize>, c: BigInt) {
        if c.is_zero() || exps.iter().zip(&self.dims).any(|(e, n)| e > n) {
            return;
        }
        let slot = self.coeffs.entry(exps).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    fn check(&self, other: &Self) -> Result<(), IntersectError> {
        if self.dims != other.dims {
            return Err(IntersectError::Invalid(format!("ambient mismatch {:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, IntersectError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.dims);
        for (e, x) in &self.coeffs {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, IntersectError> {
        self.check(other)?;
        let mut out = Self::zero(&self.dims);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.dims);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    /// Total degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.coeffs.keys().map(|e| e.iter().sum::<usize>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> =
                    e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, k)| format!("h{}^{}", i + 1, k)).collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree of a top-dimensional class: the coefficient of `prod h_i^{n_i}`.
pub fn multiproj_top_degree(class: &ChowClass) -> Result<BigInt, IntersectError> {
    let top: usize = class.dims.iter().sum();
    match class.homogeneous_degree() {
        Some(d) if d == top => Ok(class.coefficient(&class.dims)),
        None if class.is_zero() => Ok(BigInt::zero()),
        d => Err(IntersectError::WrongDegree { expected: top, got: d }),
    }
}

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ArithError, Field, Fp};

/// Below this modulus `roots` scans the whole field instead of splitting.
const EXHAUSTIVE_ROOT_SCAN: u64 = 1024;

/// Dense univariate polynomial, coefficients from low to high degree.
/// The highest stored coefficient is never zero; the zero polynomial is empty.
#[derive(Clone, PartialEq)]
pub struct UniPoly<S: Field> {
    coeffs: Vec<S>,
}

impl<S: Field> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[S], i: usize| v.get(i).cloned().unwrap_or_else(S::zero);
        UniPoly::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    pub fn monic(&self) -> Result<Self, ArithError> {
        let inv = self.leading().ok_or(ArithError::ZeroPolynomial)?.inv()?;
        Ok(UniPoly { coeffs: self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect() })
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let dl = d.leading().ok_or(ArithError::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * dl.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, ArithError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self, ArithError> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self, ArithError> {
        let one = m.leading().ok_or(ArithError::DivisionByZero)?.int_like(1);
        let mut acc = UniPoly::new(vec![one]).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl UniPoly<Fp> {
    /// Distinct roots in `F_p`, sorted by residue.
    pub fn roots(&self) -> Result<Vec<Fp>, ArithError> {
        let lead = *self.leading().ok_or(ArithError::ZeroPolynomial)?;
        let p = lead.modulus().ok_or(ArithError::Unsupported("context-free constants"))?;
        let f = self.monic()?;
        let mut roots = Vec::new();
        if f.degree() == Some(0) {
            return Ok(roots);
        }
        if p <= EXHAUSTIVE_ROOT_SCAN {
            for v in 0..p as i64 {
                let x = lead.int_like(v);
                if f.eval(&x).is_zero() {
                    roots.push(x);
                }
            }
            return Ok(roots);
        }
        let x = UniPoly::new(vec![lead.int_like(0), lead.int_like(1)]);
        let frob = x.pow_mod(p, &f)?.sub(&x);
        let g = f.gcd(&frob)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_u64);
        split_linear_factors(&g, p, &mut rng, &mut roots)?;
        roots.sort_by_key(|r| r.value());
        Ok(roots)
    }
}

/// Cantor-Zassenhaus equal-degree splitting for a monic product of distinct
/// linear factors.
fn split_linear_factors(
    g: &UniPoly<Fp>,
    p: u64,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Fp>,
) -> Result<(), ArithError> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(-g.coeffs[0]);
            return Ok(());
        }
        _ => {}
    }
    let one = g.coeffs[0].int_like(1);
    loop {
        let a = one.int_like(rng.gen_range(0..p as i64));
        let shifted = UniPoly::new(vec![a, one]);
        let h = shifted.pow_mod((p - 1) / 2, g)?.sub(&UniPoly::new(vec![one]));
        let d = g.gcd(&h)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (rest, _) = g.div_rem(&d)?;
            split_linear_factors(&d, p, rng, out)?;
            split_linear_factors(&rest, p, rng, out)?;
            return Ok(());
        }
    }
}

impl<S: Field> fmt::Debug for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*X"),
                _ => format!("{c}*X^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldCtx, PrimeField};

    fn poly(f: &PrimeField, c: &[i64]) -> UniPoly<Fp> {
        UniPoly::new(c.iter().map(|&v| f.elem(v)).collect())
    }

    #[test]
    fn roots_small_field() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(poly(&f7, &[-1, 0, 1]).roots().unwrap(), vec![f7.elem(1), f7.elem(6)]);
        assert!(poly(&f7, &[1, 0, 1]).roots().unwrap().is_empty());
    }

    #[test]
    fn roots_of_split_product_large_field() {
        let f = PrimeField::default();
        // (X - 3)(X - 10)(X^2 + 1) has roots 3, 10 and the two square roots of -1
        let p = poly(&f, &[-3, 1]).mul(&poly(&f, &[-10, 1])).mul(&poly(&f, &[1, 0, 1]));
        let r = p.roots().unwrap();
        assert_eq!(r.len(), 4);
        for x in &r {
            assert!(p.eval(x).is_zero());
        }
        assert!(r.contains(&f.elem(3)) && r.contains(&f.elem(10)));
    }

    #[test]
    fn zero_polynomial_has_no_root_set() {
        assert_eq!(UniPoly::<Fp>::zero().roots(), Err(ArithError::ZeroPolynomial));
    }

    #[test]
    fn division_identity() {
        let f = PrimeField::new(101).unwrap();
        let a = poly(&f, &[5, 3, 0, 7, 1]);
        let d = poly(&f, &[2, 9, 4]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
    }
}

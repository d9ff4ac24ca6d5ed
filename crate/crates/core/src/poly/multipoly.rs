use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::{Monomial, PolyError};
use crate::arith::{Field, UniPoly};

/// Sparse polynomial in `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<S: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Field> MultiPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: S) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `c * x_i`.
    pub fn var(nvars: usize, i: usize, c: S) -> Self {
        Self::monomial(Monomial::var(nvars, i), c)
    }

    /// The linear form `sum_i coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[S]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Some(d) when every term has total degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::VariableCount { left: self.nvars, right: other.nvars })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn eval(&self, point: &[S]) -> Result<S, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: point.len() });
        }
        let maxdeg = self.terms.keys().flat_map(|m| m.exponents().iter().copied()).max();
        let Some(maxdeg) = maxdeg else {
            return Ok(S::zero());
        };
        // powers[i][e] = point[i]^e
        let powers: Vec<Vec<S>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(maxdeg as usize + 1);
                v.push(x.int_like(1));
                for e in 1..=maxdeg as usize {
                    v.push(v[e - 1].clone() * x.clone());
                }
                v
            })
            .collect();
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][e as usize].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.differentiate(i) {
                out.add_term(dm, c.mul_int(e as i64));
            }
        }
        out
    }

    /// All partial derivatives.
    pub fn grad(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Restriction to the line `t -> base + t * dir` as a univariate in `t`.
    pub fn restrict_to_line(&self, base: &[S], dir: &[S]) -> Result<UniPoly<S>, PolyError> {
        if base.len() != self.nvars || dir.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: base.len().min(dir.len()) });
        }
        let lines: Vec<UniPoly<S>> =
            base.iter().zip(dir).map(|(b, d)| UniPoly::new(vec![b.clone(), d.clone()])).collect();
        let mut acc = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UniPoly::new(vec![c.clone()]);
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&lines[i]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Canonical text form: terms in descending graded-lex order, every
    /// coefficient explicit, e.g. `1*x0^2 + 65536*x1^2`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(m, c)| if m.degree() == 0 { format!("{c}") } else { format!("{c}*{m}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: Field> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<S: Field> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<S: Field> Neg for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn neg(self) -> MultiPoly<S> {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<S: Field> $trait for &MultiPoly<S> {
            type Output = MultiPoly<S>;
            fn $method(self, rhs: &MultiPoly<S>) -> MultiPoly<S> {
                match self.$checked(rhs) {
                    Ok(p) => p,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldCtx, PrimeField, Rationals, Q};

    fn x(i: usize) -> MultiPoly<Q> {
        MultiPoly::var(2, i, Rationals::default().one())
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(p.to_canonical_string(), "1*x0^2 + -1*x1^2");
    }

    #[test]
    fn times_zero() {
        assert!((&x(0) * &MultiPoly::zero(2)).is_zero());
    }

    #[test]
    fn eval_x_squared_plus_y() {
        let q = Rationals::default();
        let p = &(&x(0) * &x(0)) + &x(1);
        assert_eq!(p.eval(&[q.elem(2), q.elem(3)]).unwrap(), q.elem(7));
        assert!(matches!(p.eval(&[q.elem(2)]), Err(PolyError::PointLength { .. })));
    }

    #[test]
    fn grad_of_x2y() {
        let q = Rationals::default();
        let p = &(&x(0) * &x(0)) * &x(1);
        let g = p.grad();
        assert_eq!(g[0], (&x(0) * &x(1)).scale(&q.elem(2)));
        assert_eq!(g[1], &x(0) * &x(0));
    }

    #[test]
    fn variable_count_mismatch() {
        let f = PrimeField::default();
        let a = MultiPoly::var(2, 0, f.one());
        let b = MultiPoly::var(3, 0, f.one());
        assert_eq!(a.checked_add(&b), Err(PolyError::VariableCount { left: 2, right: 3 }));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn line_restriction_matches_evaluation() {
        let f = PrimeField::new(101).unwrap();
        let xs: Vec<_> = (0..3).map(|i| MultiPoly::var(3, i, f.one())).collect();
        let p = &(&(&xs[0] * &xs[1]) * &xs[2]) + &(&xs[2] * &xs[2]);
        let base = [f.elem(1), f.elem(5), f.elem(7)];
        let dir = [f.elem(2), f.elem(0), f.elem(9)];
        let u = p.restrict_to_line(&base, &dir).unwrap();
        for t in 0..20 {
            let t = f.elem(t);
            let pt: Vec<_> = base.iter().zip(&dir).map(|(b, d)| *b + t * *d).collect();
            assert_eq!(u.eval(&t), p.eval(&pt).unwrap());
        }
    }
}

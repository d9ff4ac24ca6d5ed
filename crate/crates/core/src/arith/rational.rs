use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::{ArithError, Field, FieldCtx};

/// Arbitrary-precision rationals, always in lowest terms.
pub type Q = BigRational;

/// The field `Q`. Random elements are small integers in `[-bound, bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals {
    pub bound: i64,
}

impl Default for Rationals {
    fn default() -> Self {
        Rationals { bound: 20 }
    }
}

impl FieldCtx for Rationals {
    type Elem = Q;

    fn elem(&self, n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Q {
        self.elem(rng.gen_range(-self.bound..=self.bound))
    }

    fn modulus(&self) -> Option<u64> {
        None
    }

    fn name(&self) -> String {
        "Q".into()
    }
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Field for Q {
    fn inv(&self) -> Result<Q, ArithError> {
        if self.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn int_like(&self, n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    /// Square root when both numerator and denominator are perfect squares.
    fn exact_sqrt(&self) -> Option<Q> {
        let n = integer_sqrt(self.numer())?;
        let d = integer_sqrt(self.denom())?;
        Some(Q::new(n, d))
    }

    fn modulus(&self) -> Option<u64> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn sum_of_thirds_and_sixths() {
        assert_eq!(q(1, 3) + q(1, 6), q(1, 2));
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let x = q(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
    }

    #[test]
    fn perfect_squares_only() {
        assert_eq!(q(9, 4).exact_sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).exact_sqrt(), None);
        assert_eq!(q(-1, 1).exact_sqrt(), None);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(q(0, 1).inv(), Err(ArithError::DivisionByZero));
    }
}

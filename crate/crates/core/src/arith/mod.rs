//! Exact scalar fields: prime fields with a runtime modulus and the rationals.
//!
//! Everything above this module is written against [`Field`] and [`FieldCtx`],
//! so the same code runs over `F_p` and over `Q`.

mod fp;
mod rational;
mod unipoly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

pub use fp::{is_prime, Fp, PrimeField, DEFAULT_PRIME};
pub use rational::{Rationals, Q};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field context mismatch: modulus {0} vs {1}")]
    ContextMismatch(u64, u64),
    #[error("operation not supported over {0}")]
    Unsupported(&'static str),
    #[error("invalid modulus {0}: must be a prime in (3, 2^32)")]
    InvalidModulus(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
}

/// An exact field element.
///
/// Elements carry whatever context they need (a prime-field element knows its
/// modulus), so binary operators need no side channel. `Zero::zero()` and
/// `One::one()` produce context-free constants that adopt the modulus of the
/// first bound element they meet.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse.
    fn inv(&self) -> Result<Self, ArithError>;

    /// The integer `n` embedded in the same field as `self`.
    fn int_like(&self, n: i64) -> Self;

    /// `self * n` for an integer `n`.
    fn mul_int(&self, n: i64) -> Self {
        self.clone() * self.int_like(n)
    }

    /// A square root inside the field, if one exists.
    fn exact_sqrt(&self) -> Option<Self>;

    /// Characteristic-p modulus, `None` over `Q`.
    fn modulus(&self) -> Option<u64>;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.int_like(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// A field as a value: makes constants and random elements.
pub trait FieldCtx: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Field;

    fn elem(&self, n: i64) -> Self::Elem;

    fn zero(&self) -> Self::Elem {
        self.elem(0)
    }

    fn one(&self) -> Self::Elem {
        self.elem(1)
    }

    /// A uniformly random element (over `Q`: a small random integer).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn modulus(&self) -> Option<u64>;

    /// Human-readable name, e.g. `F_65537` or `Q`.
    fn name(&self) -> String;
}

/// Square root in a prime field. Over `Q` this is an unsupported operation;
/// use [`Field::exact_sqrt`] for perfect-square detection there.
pub fn sqrt_mod_p<F: Field>(a: &F) -> Result<Option<F>, ArithError> {
    if a.modulus().is_none() {
        return Err(ArithError::Unsupported("Q (sqrt_mod_p needs a prime field)"));
    }
    Ok(a.exact_sqrt())
}

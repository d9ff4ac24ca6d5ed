use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use super::{ArithError, Field, FieldCtx};

pub const DEFAULT_PRIME: u64 = 65537;

/// Deterministic Miller-Rabin, exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field `F_p`, `3 < p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p <= 3 || p >= 1 << 32 || !is_prime(p) {
            return Err(ArithError::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn residue(&self, v: u64) -> Fp {
        Fp::bound((v % self.p as u64) as u32, self.p)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME as u32 }
    }
}

impl FieldCtx for PrimeField {
    type Elem = Fp;

    fn elem(&self, n: i64) -> Fp {
        Fp::bound(n.rem_euclid(self.p as i64) as u32, self.p)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp::bound(rng.gen_range(0..self.p), self.p)
    }

    fn modulus(&self) -> Option<u64> {
        Some(self.p as u64)
    }

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// An element of `F_p`.
///
/// `modulus == 0` marks a context-free integer constant (as produced by
/// `Fp::zero()` / `Fp::one()`); its `value` field then holds an `i32`.
#[derive(Clone, Copy)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    fn bound(value: u32, modulus: u32) -> Fp {
        Fp { value, modulus }
    }

    fn unbound(v: i32) -> Fp {
        Fp { value: v as u32, modulus: 0 }
    }

    pub fn is_bound(&self) -> bool {
        self.modulus != 0
    }

    /// Canonical residue in `[0, p)`. Context-free constants report their
    /// integer value reduced into `[0, p)` only once bound; here they return
    /// the raw integer (which is 0 or 1 in practice).
    pub fn value(&self) -> u64 {
        if self.is_bound() {
            self.value as u64
        } else {
            self.value as i32 as i64 as u64
        }
    }

    pub fn context(&self) -> Option<PrimeField> {
        self.is_bound().then_some(PrimeField { p: self.modulus })
    }

    fn residue_mod(&self, p: u32) -> u32 {
        if self.is_bound() {
            self.value
        } else {
            (self.value as i32 as i64).rem_euclid(p as i64) as u32
        }
    }

    fn join(&self, other: &Fp) -> Result<u32, ArithError> {
        match (self.modulus, other.modulus) {
            (a, b) if a == b => Ok(a),
            (0, b) => Ok(b),
            (a, 0) => Ok(a),
            (a, b) => Err(ArithError::ContextMismatch(a as u64, b as u64)),
        }
    }

    fn combine(
        &self,
        rhs: &Fp,
        modular: impl Fn(u64, u64, u64) -> u64,
        integer: impl Fn(i32, i32) -> Option<i32>,
    ) -> Result<Fp, ArithError> {
        let p = self.join(rhs)?;
        if p == 0 {
            let v = integer(self.value as i32, rhs.value as i32)
                .expect("overflow in context-free constant arithmetic");
            return Ok(Fp::unbound(v));
        }
        let a = self.residue_mod(p) as u64;
        let b = rhs.residue_mod(p) as u64;
        Ok(Fp::bound(modular(a, b, p as u64) as u32, p))
    }

    pub fn try_add(&self, rhs: &Fp) -> Result<Fp, ArithError> {
        self.combine(rhs, |a, b, p| (a + b) % p, i32::checked_add)
    }

    pub fn try_sub(&self, rhs: &Fp) -> Result<Fp, ArithError> {
        self.combine(rhs, |a, b, p| (a + p - b) % p, i32::checked_sub)
    }

    pub fn try_mul(&self, rhs: &Fp) -> Result<Fp, ArithError> {
        self.combine(rhs, |a, b, p| a * b % p, i32::checked_mul)
    }

    pub fn try_div(&self, rhs: &Fp) -> Result<Fp, ArithError> {
        self.join(rhs)?;
        let inv = rhs.inv()?;
        self.try_mul(&inv)
    }

    /// Euler's criterion: `Some(true)` for nonzero squares, `Some(false)`
    /// for non-residues, `None` for zero.
    pub fn is_quadratic_residue(&self) -> Option<bool> {
        if self.is_zero() {
            return None;
        }
        let p = self.modulus as u64;
        Some(self.pow((p - 1) / 2).value == 1)
    }

    /// Tonelli-Shanks square root. `None` for non-residues.
    pub fn sqrt_mod_p(&self) -> Option<Fp> {
        assert!(self.is_bound(), "sqrt of a context-free constant");
        let p = self.modulus as u64;
        if self.is_zero() {
            return Some(*self);
        }
        if !self.is_quadratic_residue()? {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow((p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        // smallest non-residue; exists below sqrt(p)*log(p) in practice
        let mut z = Fp::bound(2, self.modulus);
        while z.is_quadratic_residue() == Some(true) {
            z = z + Fp::bound(1, self.modulus);
        }
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        while t.value != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2.value != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow(1 << (m - i - 1));
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        Some(r)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bound() {
            write!(f, "{} (mod {})", self.value, self.modulus)
        } else {
            write!(f, "{}", self.value as i32)
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bound() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}", self.value as i32)
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Fp) -> bool {
        match self.join(other) {
            Ok(0) => self.value == other.value,
            Ok(p) => self.residue_mod(p) == other.residue_mod(p),
            Err(_) => false,
        }
    }
}

impl Eq for Fp {}

macro_rules! fp_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for Fp {
            type Output = Fp;
            fn $method(self, rhs: Fp) -> Fp {
                match self.$try(&rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

fp_binop!(Add, add, try_add);
fp_binop!(Sub, sub, try_sub);
fp_binop!(Mul, mul, try_mul);
fp_binop!(Div, div, try_div);

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.is_bound() {
            Fp::bound((self.modulus - self.value) % self.modulus, self.modulus)
        } else {
            Fp::unbound(-(self.value as i32))
        }
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp::unbound(0)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp::unbound(1)
    }
}

impl Field for Fp {
    fn inv(&self) -> Result<Fp, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if !self.is_bound() {
            return match self.value as i32 {
                1 => Ok(*self),
                -1 => Ok(*self),
                _ => Err(ArithError::Unsupported("context-free constants")),
            };
        }
        // extended Euclid on (value, p)
        let p = self.modulus as i64;
        let (mut r0, mut r1) = (p, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(Fp::bound(t0.rem_euclid(p) as u32, self.modulus))
    }

    fn int_like(&self, n: i64) -> Fp {
        if self.is_bound() {
            Fp::bound(n.rem_euclid(self.modulus as i64) as u32, self.modulus)
        } else {
            Fp::unbound(i32::try_from(n).expect("context-free constant out of range"))
        }
    }

    fn exact_sqrt(&self) -> Option<Fp> {
        self.sqrt_mod_p()
    }

    fn modulus(&self) -> Option<u64> {
        self.is_bound().then_some(self.modulus as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_of_two_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.elem(2).inv().unwrap(), f.elem(4));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(4294967311).is_err());
        assert!(PrimeField::new(65537).is_ok());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = PrimeField::default();
        assert_eq!(f.elem(5).try_div(&f.elem(0)), Err(ArithError::DivisionByZero));
        assert_eq!(f.elem(0).inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = PrimeField::new(7).unwrap().elem(3);
        let b = PrimeField::new(11).unwrap().elem(3);
        assert_eq!(a.try_add(&b), Err(ArithError::ContextMismatch(7, 11)));
    }

    #[test]
    fn unbound_constants_adopt_context() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(Fp::one() + f.elem(6), f.elem(0));
        assert_eq!(Fp::zero() - f.elem(1), f.elem(6));
        assert_eq!(-Fp::one() * f.elem(3), f.elem(4));
        assert_eq!(Fp::one(), f.elem(8));
    }

    #[test]
    fn inverse_times_self_is_one() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let a = f.random_nonzero(&mut rng);
            assert_eq!(a * a.inv().unwrap(), f.one());
        }
    }

    #[test]
    fn sqrt_of_four() {
        let f = PrimeField::default();
        let r = f.elem(4).sqrt_mod_p().unwrap();
        assert!(r == f.elem(2) || r == f.elem(65535));
        assert_eq!(f.elem(0).sqrt_mod_p(), Some(f.elem(0)));
    }

    #[test]
    fn sqrt_agrees_with_euler_criterion() {
        for p in [65537u64, 7, 11, 13, 97, 1_000_003, 2_147_483_647] {
            let f = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..500 {
                let a = f.random_nonzero(&mut rng);
                let euler = a.pow((p - 1) / 2);
                match a.sqrt_mod_p() {
                    Some(r) => {
                        assert_eq!(r * r, a);
                        assert_eq!(euler, f.one());
                    }
                    None => assert_eq!(euler, f.elem(-1)),
                }
            }
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(65537));
        assert!(!is_prime(65537 * 65539));
        assert!(is_prime(18446744073709551557));
    }
}

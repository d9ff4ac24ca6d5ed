use std::cmp::Ordering;

/// Up to eight variables, exponents below 256, graded reverse
/// lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    pub(crate) deg: u16,
    pub(crate) e: [u8; 8],
}

pub(crate) const MAX_VARS: usize = 8;

impl Mono {
    pub(crate) fn one() -> Self {
        Mono { deg: 0, e: [0; 8] }
    }

    pub(crate) fn from_exponents(exps: &[u16]) -> Option<Self> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut e = [0u8; 8];
        let mut deg = 0u16;
        for (i, &x) in exps.iter().enumerate() {
            e[i] = u8::try_from(x).ok()?;
            deg += x;
        }
        Some(Mono { deg, e })
    }

    pub(crate) fn mul(&self, o: &Mono) -> Mono {
        let mut e = [0u8; 8];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] + o.e[i];
        }
        Mono { deg: self.deg + o.deg, e }
    }

    pub(crate) fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// `o / self`, assuming `self | o`.
    pub(crate) fn quotient(&self, o: &Mono) -> Mono {
        let mut e = [0u8; 8];
        for i in 0..MAX_VARS {
            e[i] = o.e[i] - self.e[i];
        }
        Mono { deg: o.deg - self.deg, e }
    }

    pub(crate) fn lcm(&self, o: &Mono) -> Mono {
        let mut e = [0u8; 8];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(o.e[i]);
            deg += e[i] as u16;
        }
        Mono { deg, e }
    }

    pub(crate) fn coprime(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    /// Bit `8 i + k` is set when `e_i > k`; `a | b` implies
    /// `mask(a) & !mask(b) == 0`.
    pub(crate) fn divmask(&self) -> u64 {
        let mut m = 0u64;
        for i in 0..MAX_VARS {
            let k = self.e[i].min(8) as u64;
            if k > 0 {
                m |= ((1u64 << k) - 1) << (8 * i);
            }
        }
        m
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.e[i] != o.e[i] {
                    return o.e[i].cmp(&self.e[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Arithmetic in `Z / p` on `u32` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Zp(pub(crate) u32);

impl Zp {
    pub(crate) fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub(crate) fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub(crate) fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let (mut base, mut e, mut acc) = (a as u64, self.0 as u64 - 2, 1u64);
        let p = self.0 as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

/// Terms in strictly descending monomial order, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GPoly {
    pub(crate) terms: Vec<(Mono, u32)>,
}

impl GPoly {
    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> Mono {
        self.terms[0].0
    }

    pub(crate) fn degree(&self) -> u16 {
        self.terms.iter().map(|t| t.0.deg).max().unwrap_or(0)
    }

    pub(crate) fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.deg == w[1].0.deg)
    }

    pub(crate) fn monic(mut self, zp: Zp) -> Self {
        if let Some(&(_, c)) = self.terms.first() {
            if c != 1 {
                let inv = zp.inv(c);
                for t in &mut self.terms {
                    t.1 = zp.mul(t.1, inv);
                }
            }
        }
        self
    }
}

/// `a - c * q * g`.
pub(crate) fn sub_mul(zp: Zp, a: &[(Mono, u32)], c: u32, q: &Mono, g: &[(Mono, u32)]) -> Vec<(Mono, u32)> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let nc = zp.neg(c);
    while i < a.len() || j < g.len() {
        let gj = (j < g.len()).then(|| (q.mul(&g[j].0), zp.mul(nc, g[j].1)));
        match (a.get(i), gj) {
            (Some(&(ma, ca)), Some((mg, cg))) => match ma.cmp(&mg) {
                Ordering::Greater => {
                    out.push((ma, ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mg, cg));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ((ca as u64 + cg as u64) % zp.0 as u64) as u32;
                    if s != 0 {
                        out.push((ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some(&t), None) => {
                out.push(t);
                i += 1;
            }
            (None, Some(t)) => {
                out.push(t);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Index of the first polynomial whose leading monomial divides `m`.
pub(crate) fn find_reducer(m: &Mono, leads: &[(Mono, u64)], active: impl Fn(usize) -> bool) -> Option<usize> {
    let mask = m.divmask();
    leads.iter().enumerate().find(|(i, (lm, lmask))| lmask & !mask == 0 && active(*i) && lm.divides(m)).map(|(i, _)| i)
}

/// Full normal form of `f` modulo the monic polynomials `basis`.
pub(crate) fn normal_form(
    zp: Zp,
    f: &GPoly,
    basis: &[GPoly],
    leads: &[(Mono, u64)],
    active: impl Fn(usize) -> bool + Copy,
) -> GPoly {
    let mut cur = f.terms.clone();
    let mut pos = 0;
    let mut rem = Vec::new();
    while pos < cur.len() {
        let (m, c) = cur[pos];
        match find_reducer(&m, leads, active) {
            Some(k) => {
                let g = &basis[k];
                let q = g.lm().quotient(&m);
                cur = sub_mul(zp, &cur[pos..], c, &q, &g.terms);
                pos = 0;
            }
            None => {
                rem.push((m, c));
                pos += 1;
            }
        }
    }
    GPoly { terms: rem }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Mono {
        Mono::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_order() {
        // x0 > x1 > x2, and x1^2 > x0 x2 in grevlex
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[2, 0, 0]) > m(&[0, 0, 1]));
    }

    #[test]
    fn divmask_is_necessary_for_division() {
        let a = m(&[1, 2, 0]);
        let b = m(&[3, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.divmask() & !b.divmask(), 0);
        assert!(!b.divides(&a));
    }

    #[test]
    fn modular_inverse() {
        let zp = Zp(65537);
        for a in [1, 2, 3, 65536, 12345] {
            assert_eq!(zp.mul(a, zp.inv(a)), 1);
        }
    }
}

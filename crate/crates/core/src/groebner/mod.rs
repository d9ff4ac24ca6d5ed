//! Buchberger's algorithm over `F_p` in graded reverse lexicographic
//! order, and dimension and degree of projective schemes read off the
//! Hilbert series of the leading-term ideal.

mod buchberger;
mod census;
mod gpoly;
mod hilbert;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use buchberger::buchberger;
pub use census::{census_degree, census_ideal, census_report, CensusCase, CensusReport};

use crate::arith::{FieldCtx, Fp, PrimeField};
use crate::poly::{Monomial, MultiPoly};
use gpoly::{GPoly, Mono, Zp, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(
        "{reason} exceeded after {pairs_processed} pairs ({pairs_pending} pending, basis size {basis_size}, degree {degree})"
    )]
    BudgetExceeded { reason: String, pairs_processed: u64, pairs_pending: usize, basis_size: usize, degree: u32 },
    #[error("invalid ideal: {0}")]
    Invalid(String),
    #[error("could not build census input: {0}")]
    Input(String),
}

/// Resource limits for a Buchberger run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// S-pairs reduced before giving up.
    pub max_pairs: u64,
    /// Largest S-pair degree allowed (at most 250).
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 200_000, max_degree: 64 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerStats {
    pub pairs_processed: u64,
    pub pairs_skipped: u64,
    pub zero_reductions: u64,
    pub max_degree: u32,
}

/// Homogeneous generators over `F_p` in at most eight variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    nvars: usize,
    prime: u32,
    gens: Vec<GPoly>,
}

impl IdealPresentation {
    pub fn new(ctx: &PrimeField, polys: &[MultiPoly<Fp>]) -> Result<Self, GroebnerError> {
        let nvars = polys.first().map_or(0, MultiPoly::nvars);
        if nvars == 0 || nvars > MAX_VARS {
            return Err(GroebnerError::Invalid(format!("need 1..=8 variables, got {nvars}")));
        }
        let mut gens = Vec::with_capacity(polys.len());
        for (k, f) in polys.iter().enumerate() {
            if f.nvars() != nvars {
                return Err(GroebnerError::Invalid(format!("generator {k} has {} variables", f.nvars())));
            }
            if f.is_zero() {
                return Err(GroebnerError::Invalid(format!("generator {k} is zero")));
            }
            let mut terms = Vec::with_capacity(f.len());
            for (m, c) in f.terms().rev() {
                let mono = Mono::from_exponents(m.exponents())
                    .ok_or_else(|| GroebnerError::Invalid(format!("exponent too large in generator {k}")))?;
                let v = ctx.zero().try_add(c).map_err(|e| GroebnerError::Invalid(e.to_string()))?.value() as u32;
                if v != 0 {
                    terms.push((mono, v));
                }
            }
            terms.sort_by_key(|t| std::cmp::Reverse(t.0));
            let g = GPoly { terms };
            if !g.is_homogeneous() {
                return Err(GroebnerError::Invalid(format!("generator {k} is not homogeneous")));
            }
            gens.push(g);
        }
        Ok(IdealPresentation { nvars, prime: ctx.p() as u32, gens })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Reduced Groebner basis, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    prime: u32,
    polys: Vec<GPoly>,
    stats: GroebnerStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Dimension of the projective scheme; `-1` when it is empty.
    pub projective_dim: i64,
    pub degree: i64,
    /// Numerator of the Hilbert series over `(1 - t)^n`, low degree first.
    pub numerator: Vec<i64>,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|g| to_monomial(self.nvars, &g.lm())).collect()
    }

    pub fn polys(&self) -> Vec<MultiPoly<Fp>> {
        let ctx = PrimeField::new(self.prime as u64).expect("validated prime");
        self.polys
            .iter()
            .map(|g| {
                MultiPoly::from_terms(
                    self.nvars,
                    g.terms.iter().map(|(m, c)| (to_monomial(self.nvars, m), ctx.residue(*c as u64))),
                )
            })
            .collect()
    }

    /// Re-check Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        buchberger::is_groebner(Zp(self.prime), &self.polys)
    }

    /// Normal form of `f` modulo the basis is zero.
    pub fn contains(&self, f: &MultiPoly<Fp>) -> Result<bool, GroebnerError> {
        let ctx = PrimeField::new(self.prime as u64).expect("validated prime");
        if f.is_zero() {
            return Ok(true);
        }
        let g = IdealPresentation::new(&ctx, std::slice::from_ref(f))?.gens.remove(0);
        let leads: Vec<_> = self.polys.iter().map(|p| (p.lm(), p.lm().divmask())).collect();
        Ok(gpoly::normal_form(Zp(self.prime), &g, &self.polys, &leads, |_| true).is_zero())
    }

    pub fn hilbert(&self) -> HilbertData {
        let leads: Vec<Mono> = self.polys.iter().map(GPoly::lm).collect();
        let numerator = hilbert::hilbert_numerator(&leads);
        let (projective_dim, degree) = match hilbert::dim_degree(&numerator, self.nvars) {
            Some((krull, deg)) => (krull as i64 - 1, deg),
            None => (-1, 0),
        };
        HilbertData { projective_dim, degree, numerator }
    }
}

/// `(projective dimension, degree)` of the scheme cut out by the basis.
pub fn hilbert_degree_dim(g: &GroebnerBasis) -> (i64, i64) {
    let h = g.hilbert();
    (h.projective_dim, h.degree)
}

fn to_monomial(nvars: usize, m: &Mono) -> Monomial {
    let e: Vec<u16> = m.e[..nvars].iter().map(|&x| x as u16).collect();
    Monomial::from_exponents(&e)
}

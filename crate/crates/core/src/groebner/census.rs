use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{buchberger, Budget, GroebnerError, IdealPresentation};
use crate::arith::{FieldCtx, Fp, PrimeField};
use crate::linalg::Mat;
use crate::poly::{MultiPoly, PolyMat};
use crate::status::Status;
use crate::web::{node_jacobian, sample_web, trial_rng, Plane, Web, WebJson};

/// Zero-dimensional ideals whose degree is known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CensusCase {
    /// Maximal minors of the 4x5 node matrix of a web containing a plane.
    #[serde(rename = "nodes10")]
    Nodes10,
    /// A generic web restricted to a random `P^4`.
    #[serde(rename = "bezout16")]
    Bezout16,
    /// Adjugate entries of `sum lambda_i Q_i` for a generic web.
    #[serde(rename = "rank84-slice")]
    Rank84Slice,
    /// 2x2 minors of a generic 4-dimensional slice of symmetric 3x3
    /// matrices.
    #[serde(rename = "veronese4")]
    Veronese4,
}

impl CensusCase {
    pub const ALL: [CensusCase; 4] =
        [CensusCase::Nodes10, CensusCase::Bezout16, CensusCase::Rank84Slice, CensusCase::Veronese4];

    pub fn expected(self) -> u64 {
        match self {
            CensusCase::Nodes10 => 10,
            CensusCase::Bezout16 => 16,
            CensusCase::Rank84Slice => 84,
            CensusCase::Veronese4 => 4,
        }
    }

    pub fn is_slow(self) -> bool {
        self == CensusCase::Rank84Slice
    }

    /// Budget large enough for a generic instance.
    pub fn default_budget(self) -> Budget {
        match self {
            CensusCase::Rank84Slice => Budget { max_pairs: 2_000_000, max_degree: 120 },
            _ => Budget::default(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CensusCase::Nodes10 => "nodes10",
            CensusCase::Bezout16 => "bezout16",
            CensusCase::Rank84Slice => "rank84-slice",
            CensusCase::Veronese4 => "veronese4",
        }
    }
}

impl fmt::Display for CensusCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CensusCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CensusCase::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown census case {s:?} (expected nodes10, bezout16, rank84-slice, veronese4)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub case: CensusCase,
    pub prime: u64,
    pub seed: u64,
    pub expected: u64,
    pub computed: Option<i64>,
    pub projective_dim: Option<i64>,
    pub status: Status,
    pub generators: usize,
    pub basis_size: Option<usize>,
    pub pair_count: u64,
    pub max_degree: u32,
    /// Buchberger's criterion re-checked on the returned basis.
    pub verified: Option<bool>,
    pub web_hash: Option<String>,
    pub note: Option<String>,
    pub wall_time_ms: u64,
}

fn input_err(e: impl fmt::Display) -> GroebnerError {
    GroebnerError::Input(e.to_string())
}

/// `x^T R x` as a polynomial.
fn quadratic_form(ctx: &PrimeField, r: &Mat<Fp>) -> MultiPoly<Fp> {
    let n = r.rows();
    let mut out = MultiPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            let t = &MultiPoly::var(n, i, r[(i, j)]) * &MultiPoly::var(n, j, ctx.one());
            out = &out + &t;
        }
    }
    out
}

fn web_hash(ctx: &PrimeField, web: &Web<Fp>) -> String {
    WebJson::from_web(ctx, web).content_hash()
}

/// The generators for `case` built from the seeded web, with the web's
/// content hash when a web is involved.
pub fn census_ideal(
    case: CensusCase,
    ctx: &PrimeField,
    seed: u64,
) -> Result<(Vec<MultiPoly<Fp>>, Option<String>), GroebnerError> {
    match case {
        CensusCase::Nodes10 => {
            let web = sample_web(ctx, seed, Some(Plane::standard(ctx))).map_err(input_err)?;
            let (a, _) = node_jacobian(ctx, &web).map_err(input_err)?;
            Ok((a.maximal_minors().map_err(input_err)?, Some(web_hash(ctx, &web))))
        }
        CensusCase::Bezout16 => {
            let web = sample_web(ctx, seed, None).map_err(input_err)?;
            let mut rng = trial_rng(seed, 1);
            let b = Mat::random(ctx, 8, 5, &mut rng);
            let polys = web
                .quadrics()
                .iter()
                .map(|q| q.restrict_to_basis(&b).map(|r| quadratic_form(ctx, &r)))
                .collect::<Result<_, _>>()
                .map_err(input_err)?;
            Ok((polys, Some(web_hash(ctx, &web))))
        }
        CensusCase::Rank84Slice => {
            let web = sample_web(ctx, seed, None).map_err(input_err)?;
            let adj = PolyMat::linear_combination(web.quadrics()).adjugate().map_err(input_err)?;
            let mut polys = Vec::with_capacity(36);
            for i in 0..8 {
                for j in i..8 {
                    polys.push(adj.get(i, j).clone());
                }
            }
            Ok((polys, Some(web_hash(ctx, &web))))
        }
        CensusCase::Veronese4 => {
            let mut rng = trial_rng(seed, 0);
            let mats: Vec<Mat<Fp>> = (0..4)
                .map(|_| {
                    let m = Mat::random(ctx, 3, 3, &mut rng);
                    Mat::from_fn(3, 3, |i, j| if i <= j { m[(i, j)] } else { m[(j, i)] })
                })
                .collect();
            let m = PolyMat::linear_combination(&mats);
            let mut polys = Vec::new();
            for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
                for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
                    let minor =
                        &(m.get(r1, c1) * m.get(r2, c2)) - &(m.get(r1, c2) * m.get(r2, c1));
                    if !minor.is_zero() {
                        polys.push(minor);
                    }
                }
            }
            Ok((polys, None))
        }
    }
}

/// Build the ideal for `case`, compute a Groebner basis and compare its
/// Hilbert degree with the expected count. Budget exhaustion is reported as
/// inconclusive.
pub fn census_degree(
    case: CensusCase,
    ctx: &PrimeField,
    seed: u64,
    budget: &Budget,
) -> Result<CensusReport, GroebnerError> {
    let start = Instant::now();
    let (polys, hash) = census_ideal(case, ctx, seed)?;
    let mut report = census_report(case, ctx, seed, &polys, hash, budget)?;
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Census of explicitly given generators, labelled as `case`.
pub fn census_report(
    case: CensusCase,
    ctx: &PrimeField,
    seed: u64,
    polys: &[MultiPoly<Fp>],
    hash: Option<String>,
    budget: &Budget,
) -> Result<CensusReport, GroebnerError> {
    let start = Instant::now();
    let ideal = IdealPresentation::new(ctx, polys)?;
    let mut report = CensusReport {
        case,
        prime: ctx.p(),
        seed,
        expected: case.expected(),
        computed: None,
        projective_dim: None,
        status: Status::Inconclusive,
        generators: ideal.len(),
        basis_size: None,
        pair_count: 0,
        max_degree: 0,
        verified: None,
        web_hash: hash,
        note: None,
        wall_time_ms: 0,
    };
    match buchberger(&ideal, budget) {
        Ok(g) => {
            let h = g.hilbert();
            let verified = g.verify();
            report.computed = Some(h.degree);
            report.projective_dim = Some(h.projective_dim);
            report.basis_size = Some(g.len());
            report.pair_count = g.stats().pairs_processed;
            report.max_degree = g.stats().max_degree;
            report.verified = Some(verified);
            let ok = verified && h.projective_dim == 0 && h.degree == case.expected() as i64;
            report.status = Status::from_bool(ok);
            if !ok {
                report.note = Some(format!(
                    "projective dimension {}, degree {}, criterion re-check {}",
                    h.projective_dim, h.degree, verified
                ));
            }
        }
        Err(GroebnerError::BudgetExceeded { reason, pairs_processed, pairs_pending, basis_size, degree }) => {
            report.pair_count = pairs_processed;
            report.max_degree = degree;
            report.basis_size = Some(basis_size);
            report.note = Some(format!("{reason} exceeded with {pairs_pending} pairs pending"));
        }
        Err(e) => return Err(e),
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, RngCore};
use rayon::prelude::*;

use super::{CampaignError, Check, Report, RunConfig};
use crate::arith::{FieldCtx, Fp, PrimeField};
use crate::linalg::projectively_equal;
use crate::status::Status;
use crate::web::{
    classify_member, det_octic, point_to_quadric, quadric_to_points, sample_octic_point, sample_web, trial_rng,
    MemberClass, OcticSurface, Plane, Splitting, Web, WebError, WebJson, MAX_RESAMPLES,
};

const ROUND_TRIP_STREAM: u64 = 1 << 32;
const OCTIC_STREAM: u64 = 2 << 32;
const DISC_STREAM: u64 = 3 << 32;
const REJECTION_BAND: (f64, f64) = (0.35, 0.65);
/// Fewer draws than this make the band check meaningless.
const REJECTION_MIN_DRAWS: u64 = 100;

#[derive(Clone, Debug, PartialEq)]
enum Outcome {
    Pass,
    /// Non-square discriminant.
    Rejected,
    /// Every redraw hit a special position.
    Exhausted,
    Fail(String),
}

struct Trial {
    outcome: Outcome,
    resamples: u64,
}

/// Redraw while `f` reports a non-generic sample.
fn with_resamples<R: Rng>(rng: &mut R, mut f: impl FnMut(&mut R) -> Result<Outcome, WebError>) -> Trial {
    let mut resamples = 0;
    for _ in 0..MAX_RESAMPLES {
        match f(rng) {
            Ok(outcome) => return Trial { outcome, resamples },
            Err(WebError::NonGeneric(_)) | Err(WebError::NonUniqueQuadric(_)) => resamples += 1,
            Err(WebError::Degenerate { .. }) => return Trial { outcome: Outcome::Exhausted, resamples },
            Err(e) => return Trial { outcome: Outcome::Fail(e.to_string()), resamples },
        }
    }
    Trial { outcome: Outcome::Exhausted, resamples }
}

fn random_lambda<R: Rng>(ctx: &PrimeField, rng: &mut R) -> Vec<Fp> {
    (0..4).map(|_| ctx.random(rng)).collect()
}

/// Random member off the octic, to its two points and back.
fn round_trip<R: Rng>(ctx: &PrimeField, web: &Web<Fp>, octic: &OcticSurface<Fp>, rng: &mut R) -> Result<Outcome, WebError> {
    let lambda = random_lambda(ctx, rng);
    if lambda.iter().all(Zero::is_zero) || octic.eval(&lambda)?.is_zero() {
        return Err(WebError::NonGeneric("member on the octic".into()));
    }
    let member = web.member(&lambda)?;
    if member.matrix().rank() < 8 {
        return Ok(Outcome::Fail(format!("octic nonzero but member singular at {lambda:?}")));
    }
    let res = quadric_to_points(web, &member)?;
    match res.splitting {
        Splitting::ConjugatePair => return Ok(Outcome::Rejected),
        Splitting::Double => return Ok(Outcome::Fail(format!("double 3-space off the octic at {lambda:?}"))),
        Splitting::Two => {}
    }
    if !res.all_points() {
        return Ok(Outcome::Fail(format!("residual is not a point at {lambda:?}")));
    }
    let pts = res.points();
    if pts.len() != 2 || projectively_equal(&pts[0], &pts[1]) {
        return Ok(Outcome::Fail(format!("points not distinct at {lambda:?}")));
    }
    let plane = web.plane().expect("plane web");
    for p in &pts {
        if !web.in_base_locus(p)? || plane.contains(p) {
            return Ok(Outcome::Fail(format!("point {p:?} not in BS \\ P")));
        }
        let back = point_to_quadric(web, p)?;
        if back.lambda() != member.lambda() {
            return Ok(Outcome::Fail(format!("round trip {:?} -> {:?}", member.lambda(), back.lambda())));
        }
    }
    Ok(Outcome::Pass)
}

/// A point of the octic: one double 3-space, one residual point, rank 7.
fn octic_trial<R: Rng>(ctx: &PrimeField, web: &Web<Fp>, octic: &OcticSurface<Fp>, rng: &mut R) -> Result<Outcome, WebError> {
    let lambda = sample_octic_point(octic, ctx, rng)?;
    let class = classify_member(web, octic, &lambda)?;
    if class.class != MemberClass::OcticSmoothPoint {
        // singular points of the octic are a finite set
        return Err(WebError::NonGeneric(format!("sampled {:?}", class.class)));
    }
    if class.rank != 7 {
        return Ok(Outcome::Fail(format!("rank {} at {lambda:?}", class.rank)));
    }
    let res = quadric_to_points(web, &web.member(&lambda)?)?;
    if !res.discriminant.is_zero() || res.splitting != Splitting::Double {
        return Ok(Outcome::Fail(format!("discriminant {} at {lambda:?}", res.discriminant)));
    }
    let pts = res.points();
    if res.residuals.len() != 1 || pts.len() != 1 {
        return Ok(Outcome::Fail(format!("{} residual points at {lambda:?}", pts.len())));
    }
    if !web.in_base_locus(&pts[0])? || web.plane().expect("plane web").contains(&pts[0]) {
        return Ok(Outcome::Fail(format!("point {:?} not in BS \\ P", pts[0])));
    }
    Ok(Outcome::Pass)
}

/// `disc = 0` exactly when `det = 0`, on or off the octic.
fn disc_det<R: Rng>(
    ctx: &PrimeField,
    web: &Web<Fp>,
    octic: &OcticSurface<Fp>,
    on_octic: bool,
    rng: &mut R,
) -> Result<Outcome, WebError> {
    let lambda = if on_octic { sample_octic_point(octic, ctx, rng)? } else { random_lambda(ctx, rng) };
    if lambda.iter().all(Zero::is_zero) {
        return Err(WebError::NonGeneric("zero member".into()));
    }
    let member = web.member(&lambda)?;
    let det_zero = member.matrix().rank() < 8;
    let disc_zero = quadric_to_points(web, &member)?.discriminant.is_zero();
    Ok(if det_zero == disc_zero {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("det zero {det_zero}, disc zero {disc_zero} at {lambda:?}"))
    })
}

struct Tally {
    pass: u64,
    rejected: u64,
    exhausted: u64,
    fail: u64,
    first_failure: Option<String>,
}

fn tally(trials: &[Trial], report: &mut Report) -> Tally {
    let mut t = Tally { pass: 0, rejected: 0, exhausted: 0, fail: 0, first_failure: None };
    for tr in trials {
        report.counters.trials += 1;
        report.counters.non_generic_resamples += tr.resamples;
        match &tr.outcome {
            Outcome::Pass => t.pass += 1,
            Outcome::Rejected => {
                t.rejected += 1;
                report.counters.rejections += 1;
            }
            Outcome::Exhausted => t.exhausted += 1,
            Outcome::Fail(msg) => {
                t.fail += 1;
                t.first_failure.get_or_insert_with(|| msg.clone());
            }
        }
    }
    t
}

fn tally_check(name: String, t: &Tally, expected: u64) -> Check {
    let status = if t.fail > 0 {
        Status::Fail
    } else if t.exhausted > 0 || expected == 0 {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    let check = Check::new(name, expected, t.pass, status);
    match &t.first_failure {
        Some(msg) => check.with_detail(format!("{} failures, first: {msg}", t.fail)),
        None if t.exhausted > 0 => check.with_detail(format!("{} trials exhausted resamples", t.exhausted)),
        None => check,
    }
}

fn par_trials(
    n: u64,
    seed: u64,
    stream: u64,
    f: impl Fn(u64, &mut rand_chacha::ChaCha8Rng) -> Result<Outcome, WebError> + Sync,
) -> Vec<Trial> {
    // collect keeps index order, so the report does not depend on scheduling
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, stream + i);
            with_resamples(&mut rng, |r| f(i, r))
        })
        .collect()
}

/// Round trips on random members, trials on octic points and the
/// `disc = 0 <=> det = 0` tally, over several seeded plane webs.
pub fn run_correspondence(cfg: &RunConfig) -> Result<Report, CampaignError> {
    let start = Instant::now();
    let ctx = cfg.validate()?;
    let mut report = Report::new(cfg.clone());

    let mut webs: Vec<(u64, Web<Fp>, OcticSurface<Fp>)> = Vec::new();
    let candidates: Vec<(u64, Option<Web<Fp>>)> = match cfg.loaded_web(&ctx)? {
        Some(w) => vec![(w.seed().unwrap_or(cfg.seed), Some(w))],
        None => (0..cfg.webs).map(|k| (trial_rng(cfg.seed, k).next_u64(), None)).collect(),
    };
    for (k, (seed, loaded)) in candidates.into_iter().enumerate() {
        let web = match loaded {
            Some(w) => Ok(w),
            None => sample_web(&ctx, seed, Some(Plane::standard(&ctx))),
        };
        let name = format!("web{k}.generic");
        let web = match web.and_then(|w| det_octic(&w).map(|o| (w, o))) {
            Ok(w) if w.0.plane().is_some() => w,
            Ok(_) => {
                return Err(CampaignError::Config("correspondence needs a web containing a plane".into()));
            }
            Err(e @ (WebError::Degenerate { .. } | WebError::NonGeneric(_))) => {
                report.checks.push(Check::new(name, true, false, Status::Inconclusive).with_detail(e.to_string()));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        report.web_hashes.push(WebJson::from_web(&ctx, &web.0).content_hash());
        webs.push((seed, web.0, web.1));
    }
    if webs.is_empty() {
        report.wall_time_ms = start.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let mut draws = 0;
    let mut rejections = 0;
    for (k, (seed, web, octic)) in webs.iter().enumerate() {
        let t0 = Instant::now();
        let trials = par_trials(cfg.trials, *seed, ROUND_TRIP_STREAM, |_, rng| round_trip(&ctx, web, octic, rng));
        let t = tally(&trials, &mut report);
        draws += cfg.trials;
        rejections += t.rejected;
        let split = cfg.trials - t.rejected - t.exhausted;
        report.checks.push(tally_check(format!("web{k}.round_trip"), &t, split).timed(t0));
    }

    let fraction = rejections as f64 / draws as f64;
    let in_band = (REJECTION_BAND.0..=REJECTION_BAND.1).contains(&fraction);
    let status = if draws < REJECTION_MIN_DRAWS { Status::Inconclusive } else { Status::from_bool(in_band) };
    report.checks.push(
        Check::new(
            "rejection_fraction",
            format!("{:.2}..{:.2}", REJECTION_BAND.0, REJECTION_BAND.1),
            format!("{fraction:.4}"),
            status,
        )
        .with_detail(format!("{rejections} of {draws} members have a non-square discriminant")),
    );

    let n = webs.len() as u64;
    let t0 = Instant::now();
    let trials = par_trials(cfg.octic_trials, cfg.seed, OCTIC_STREAM, |i, rng| {
        let (_, web, octic) = &webs[(i % n) as usize];
        octic_trial(&ctx, web, octic, rng)
    });
    let t = tally(&trials, &mut report);
    report.checks.push(tally_check("octic_points".into(), &t, cfg.octic_trials - t.exhausted).timed(t0));

    let t0 = Instant::now();
    let trials = par_trials(cfg.disc_samples, cfg.seed, DISC_STREAM, |i, rng| {
        let (_, web, octic) = &webs[(i % n) as usize];
        disc_det(&ctx, web, octic, i % 2 == 1, rng)
    });
    let t = tally(&trials, &mut report);
    report.checks.push(tally_check("disc_iff_det".into(), &t, cfg.disc_samples - t.exhausted).timed(t0));

    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

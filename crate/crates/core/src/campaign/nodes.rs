use std::time::Instant;

use num_traits::Zero;
use serde_json::json;

use super::invariants::{multiproj_count_or_null, rank_le6_or_null};
use super::{opt, CampaignError, Check, Report, RunConfig};
use crate::arith::{Fp, PrimeField};
use crate::groebner::{census_report, CensusCase};
use crate::intersect::nodal_euler_chain;
use crate::linalg::projectively_equal;
use crate::status::Status;
use crate::web::{
    classify_member, det_octic, node_census, node_census_brute, node_jacobian, planted_rank6_web, sample_web,
    MemberClass, NodeRecord, Plane, Web, WebError, WebJson,
};

/// Largest prime for which the fibred scan is re-run as a full scan.
const BRUTE_LIMIT: u64 = 211;

fn all_count(name: &str, nodes: &[NodeRecord<Fp>], ok: impl Fn(&NodeRecord<Fp>) -> bool) -> Check {
    let good = nodes.iter().filter(|n| ok(n)).count();
    Check::equal(name, nodes.len(), good)
}

/// Rational nodes of the octic coming from the plane, with per-node
/// checks, the planted rank-6 member and optionally a Groebner count of
/// all nodes.
pub fn run_nodes(cfg: &RunConfig) -> Result<Report, CampaignError> {
    let start = Instant::now();
    let ctx = cfg.validate()?;
    let mut report = Report::new(cfg.clone());
    let web = match cfg.loaded_web(&ctx)? {
        Some(w) => Ok(w),
        None => sample_web(&ctx, cfg.seed, Some(Plane::standard(&ctx))),
    };
    let web = match web {
        Ok(w) if w.plane().is_some() => w,
        Ok(_) => return Err(CampaignError::Config("nodes needs a web containing a plane".into())),
        Err(e @ (WebError::Degenerate { .. } | WebError::NonGeneric(_))) => {
            report.checks.push(Check::new("web.generic", true, false, Status::Inconclusive).with_detail(e.to_string()));
            report.wall_time_ms = start.elapsed().as_millis() as u64;
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    let hash = WebJson::from_web(&ctx, &web).content_hash();
    report.web_hashes.push(hash.clone());

    let t0 = Instant::now();
    let octic = det_octic(&web)?;
    let nodes = node_census(&web, &octic, &ctx)?;
    report.counters.trials = nodes.len() as u64;
    let count = nodes.len();
    report.checks.push(
        Check::new("nodes.rational_count", "<= 10", count, Status::from_bool(count <= 10)).timed(t0),
    );
    report.checks.push(all_count("nodes.jacobian_rank3", &nodes, |n| n.jacobian_rank == 3));
    report.checks.push(all_count("nodes.member_rank7", &nodes, |n| n.member_rank == 7));
    report.checks.push(all_count("nodes.kernel_on_plane", &nodes, |n| n.kernel_on_plane && n.annihilates_point));
    report.checks.push(all_count("nodes.gradient_vanishes", &nodes, |n| n.gradient_vanishes));
    report.checks.push(all_count("nodes.classified", &nodes, |n| {
        classify_member(&web, &octic, &n.lambda).is_ok_and(|c| c.class == MemberClass::Rank7SingOnPlane)
    }));
    let distinct = nodes
        .iter()
        .enumerate()
        .all(|(i, a)| nodes[i + 1..].iter().all(|b| !projectively_equal(&a.lambda, &b.lambda)));
    report.checks.push(Check::equal("nodes.distinct_lambda", true, distinct));
    if ctx.p() <= BRUTE_LIMIT {
        let brute = node_census_brute(&web, &octic, &ctx)?;
        let same = brute.len() == nodes.len()
            && brute.iter().all(|b| nodes.iter().any(|n| projectively_equal(&n.lambda, &b.lambda)));
        report.checks.push(Check::new("nodes.full_scan_agrees", brute.len(), count, Status::from_bool(same)));
    }

    if cfg.groebner {
        report.checks.push(groebner_check(cfg, &ctx, &web, &hash, count)?);
    }

    report.checks.push(planted_check(&ctx, cfg.seed)?);

    let (hts, mp) = (rank_le6_or_null(), multiproj_count_or_null());
    let total = match (hts.as_i64(), mp.as_i64()) {
        (Some(a), Some(b)) => json!(a + b),
        _ => json!(null),
    };
    let mut line = Check::equal("nodes.total_84_plus_10", 94, total.clone());
    if let Some(t) = total.as_i64() {
        if let Ok((_, chi)) = nodal_euler_chain(-296, t) {
            line = line.with_detail(format!("rank<=6 {hts} + plane {mp}; resolved double cover euler {chi}"));
        }
    }
    report.checks.push(line);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn groebner_check(
    cfg: &RunConfig,
    ctx: &PrimeField,
    web: &Web<Fp>,
    hash: &str,
    rational: usize,
) -> Result<Check, CampaignError> {
    let case = CensusCase::Nodes10;
    let (a, _) = node_jacobian(ctx, web)?;
    let minors = a.maximal_minors().map_err(WebError::from)?;
    let budget = cfg.budget.unwrap_or_else(|| case.default_budget());
    let r = census_report(case, ctx, cfg.seed, &minors, Some(hash.to_string()), &budget)
        .map_err(|e| CampaignError::Config(e.to_string()))?;
    let mut check = Check::new("nodes.groebner_degree", 10, json!(r.computed), r.status);
    check.wall_time_ms = Some(r.wall_time_ms);
    let consistent = r.computed.is_none_or(|d| rational as i64 <= d);
    if !consistent {
        check.status = Status::Fail;
    }
    let detail = format!(
        "basis {}, {} pairs, max degree {}, criterion re-check {}, {rational} rational{}",
        opt(&r.basis_size),
        r.pair_count,
        r.max_degree,
        opt(&r.verified),
        r.note.map(|n| format!("; {n}")).unwrap_or_default()
    );
    Ok(check.with_detail(detail))
}

fn planted_check(ctx: &PrimeField, seed: u64) -> Result<Check, CampaignError> {
    let (web, lambda) = planted_rank6_web(ctx, seed)?;
    let octic = det_octic(&web)?;
    let c = classify_member(&web, &octic, &lambda)?;
    let value_zero = octic.eval(&lambda)?.is_zero();
    let ok = c.class == MemberClass::RankLE6 && c.gradient_vanishes && value_zero;
    Ok(Check::new(
        "nodes.planted_rank6",
        json!({"class": MemberClass::RankLE6, "gradient_vanishes": true}),
        json!({"class": c.class, "gradient_vanishes": c.gradient_vanishes}),
        Status::from_bool(ok),
    )
    .with_detail(format!("rank {}", c.rank)))
}

use std::time::Instant;

use serde_json::json;

use super::{opt, CampaignError, Check, Report, RunConfig};
use crate::groebner::{census_degree, GroebnerError};
use crate::status::Status;

/// Groebner degree of one census ideal against its closed-form count.
pub fn run_census(cfg: &RunConfig) -> Result<Report, CampaignError> {
    let start = Instant::now();
    let ctx = cfg.validate()?;
    let case = cfg.case.ok_or_else(|| CampaignError::Config("census needs a case".into()))?;
    let budget = cfg.budget.unwrap_or_else(|| case.default_budget());
    let mut report = Report::new(cfg.clone());
    let name = format!("census.{case}");
    let check = match census_degree(case, &ctx, cfg.seed, &budget) {
        Ok(r) => {
            report.web_hashes.extend(r.web_hash.clone());
            report.counters.trials = 1;
            let detail = format!(
                "dimension {}, {} generators, basis {}, {} pairs, max degree {}, criterion re-check {}{}",
                opt(&r.projective_dim),
                r.generators,
                opt(&r.basis_size),
                r.pair_count,
                r.max_degree,
                opt(&r.verified),
                r.note.as_ref().map(|n| format!("; {n}")).unwrap_or_default()
            );
            let mut c = Check::new(name, r.expected, json!(r.computed), r.status).with_detail(detail);
            c.wall_time_ms = Some(r.wall_time_ms);
            c
        }
        Err(GroebnerError::Input(msg)) => Check::new(name, case.expected(), json!(null), Status::Inconclusive).with_detail(msg),
        Err(e) => Check::new(name, case.expected(), json!(null), Status::Fail).with_detail(e.to_string()),
    };
    report.checks.push(check);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

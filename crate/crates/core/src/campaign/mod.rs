//! Seeded verification campaigns and their reports.
//!
//! A [`Report`] is a list of checks, each carrying the expected and the
//! computed value. Reports are emitted as JSON lines (a `run` header, one
//! `check` line per check and a closing `summary`) and are byte-identical
//! across runs with the same configuration apart from the `wall_time_ms`
//! fields.

mod census;
mod correspond;
mod invariants;
mod nodes;

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub use census::run_census;
pub use correspond::run_correspondence;
pub use invariants::run_invariants;
pub use nodes::run_nodes;

use crate::arith::{is_prime, PrimeField, DEFAULT_PRIME};
use crate::groebner::{Budget, CensusCase};
use crate::status::Status;
use crate::web::{Web, WebError, WebJson};
use crate::arith::Fp;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read web file: {0}")]
    WebFile(String),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error("malformed report: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Invariants,
    Correspondence,
    Nodes,
    Census,
}

/// Everything that determines a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub prime: u64,
    pub seed: u64,
    /// Round-trip trials per web.
    pub trials: u64,
    /// Webs sampled by the correspondence campaign.
    pub webs: u64,
    /// Trials at sampled points of the octic.
    pub octic_trials: u64,
    /// Members tested for `disc = 0 <=> det = 0`, half of them on the octic.
    pub disc_samples: u64,
    /// Certify the node count with a Groebner basis.
    pub groebner: bool,
    pub case: Option<CensusCase>,
    /// Overrides the per-case default.
    pub budget: Option<Budget>,
    /// Use this web instead of sampling one.
    pub web: Option<WebJson>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            prime: DEFAULT_PRIME,
            seed: 0,
            trials: 100,
            webs: 5,
            octic_trials: 20,
            disc_samples: 500,
            groebner: false,
            case: None,
            budget: None,
            web: None,
        }
    }

    pub fn validate(&self) -> Result<PrimeField, CampaignError> {
        if !is_prime(self.prime) || self.prime > u32::MAX as u64 {
            return Err(CampaignError::Config(format!("{} is not a prime below 2^32", self.prime)));
        }
        if self.command == Command::Correspondence && (self.trials == 0 || self.webs == 0) {
            return Err(CampaignError::Config("trials and webs must be at least 1".into()));
        }
        if self.command == Command::Census && self.case.is_none() {
            return Err(CampaignError::Config("census needs a case".into()));
        }
        if let Some(w) = &self.web {
            if w.prime != Some(self.prime) {
                return Err(CampaignError::Config(format!(
                    "web file is over {:?}, configuration over {}",
                    w.prime, self.prime
                )));
            }
        }
        PrimeField::new(self.prime).map_err(|e| CampaignError::Config(e.to_string()))
    }

    /// The configured web, or `None` when one should be sampled.
    pub(crate) fn loaded_web(&self, ctx: &PrimeField) -> Result<Option<Web<Fp>>, CampaignError> {
        self.web.as_ref().map(|w| w.to_web(ctx)).transpose().map_err(Into::into)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Into<Value>, computed: impl Into<Value>, status: Status) -> Self {
        Check {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            status,
            detail: None,
            wall_time_ms: None,
        }
    }

    /// Pass iff `computed == expected`.
    pub fn equal(name: impl Into<String>, expected: impl Into<Value>, computed: impl Into<Value>) -> Self {
        let (e, c) = (expected.into(), computed.into());
        let status = Status::from_bool(e == c);
        Check::new(name, e, c, status)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub trials: u64,
    /// Trials dropped because the discriminant is not a square.
    pub rejections: u64,
    /// Samples redrawn because they hit a special position.
    pub non_generic_resamples: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub counters: Counters,
    /// Content hashes of the webs used, in order of use.
    pub web_hashes: Vec<String>,
    pub wall_time_ms: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Line {
    Run { config: RunConfig, web_hashes: Vec<String> },
    Check(Check),
    Summary { status: Status, passed: usize, failed: usize, inconclusive: usize, counters: Counters, wall_time_ms: u64 },
}

impl Report {
    fn new(config: RunConfig) -> Self {
        Report { config, checks: Vec::new(), counters: Counters::default(), web_hashes: Vec::new(), wall_time_ms: 0 }
    }

    fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    /// Fail if any check fails, otherwise inconclusive if any check is.
    pub fn status(&self) -> Status {
        if self.count(Status::Fail) > 0 {
            Status::Fail
        } else if self.count(Status::Inconclusive) > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn has_failures(&self) -> bool {
        self.status() == Status::Fail
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The same report with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.wall_time_ms = 0;
        for c in &mut r.checks {
            c.wall_time_ms = c.wall_time_ms.map(|_| 0);
        }
        r
    }

    pub fn to_json_lines(&self) -> String {
        let mut lines = vec![Line::Run { config: self.config.clone(), web_hashes: self.web_hashes.clone() }];
        lines.extend(self.checks.iter().cloned().map(Line::Check));
        lines.push(Line::Summary {
            status: self.status(),
            passed: self.count(Status::Pass),
            failed: self.count(Status::Fail),
            inconclusive: self.count(Status::Inconclusive),
            counters: self.counters,
            wall_time_ms: self.wall_time_ms,
        });
        let mut out = String::new();
        for l in lines {
            out.push_str(&serde_json::to_string(&l).expect("report lines serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(s: &str) -> Result<Self, CampaignError> {
        let mut report: Option<Report> = None;
        let mut summary_seen = false;
        for (k, raw) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let line: Line = serde_json::from_str(raw).map_err(|e| CampaignError::Parse(format!("line {}: {e}", k + 1)))?;
            match (line, report.as_mut()) {
                (Line::Run { config, web_hashes }, None) => {
                    let mut r = Report::new(config);
                    r.web_hashes = web_hashes;
                    report = Some(r);
                }
                (Line::Check(c), Some(r)) if !summary_seen => r.checks.push(c),
                (Line::Summary { counters, wall_time_ms, .. }, Some(r)) if !summary_seen => {
                    r.counters = counters;
                    r.wall_time_ms = wall_time_ms;
                    summary_seen = true;
                }
                _ => return Err(CampaignError::Parse(format!("unexpected line {}", k + 1))),
            }
        }
        match report {
            Some(r) if summary_seen => Ok(r),
            _ => Err(CampaignError::Parse("missing run or summary line".into())),
        }
    }

    /// Fixed-width table of the checks.
    pub fn summary_table(&self) -> String {
        let name_w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let show = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let mut out = String::new();
        let _ = writeln!(out, "{:<name_w$}  {:<24}  {:<24}  status", "check", "expected", "computed");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<name_w$}  {:<24}  {:<24}  {}",
                c.name,
                show(&c.expected),
                show(&c.computed),
                c.status
            );
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} inconclusive; trials {}, rejections {}, resamples {}; {} ms",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive),
            self.counters.trials,
            self.counters.rejections,
            self.counters.non_generic_resamples,
            self.wall_time_ms
        );
        out
    }
}

/// `n/a` for a missing value.
pub(crate) fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), ToString::to_string)
}

/// Dispatch on `cfg.command`.
pub fn run(cfg: &RunConfig) -> Result<Report, CampaignError> {
    match cfg.command {
        Command::Invariants => run_invariants(cfg),
        Command::Correspondence => run_correspondence(cfg),
        Command::Nodes => run_nodes(cfg),
        Command::Census => run_census(cfg),
    }
}

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use quadweb::arith::DEFAULT_PRIME;
use quadweb::campaign::{self, Command, Report, RunConfig};
use quadweb::groebner::{Budget, CensusCase};
use quadweb::web::{det_octic, sample_web, Plane, WebJson};
use quadweb::PrimeField;
use serde_json::json;

/// Seeded exact verification campaigns for webs of quadrics in P^7.
///
/// Reports go to stdout (or --out) as JSON lines; a summary table goes to
/// stderr. The exit code is 0 iff no check fails.
#[derive(Parser)]
#[command(name = "quadweb", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form ledger of dimensions, Euler characteristics and degrees.
    Invariants(Common),
    /// Round trips between web members and pairs of base-locus points.
    Correspondence {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        field: FieldArgs,
        /// Round-trip trials per web.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 5)]
        webs: u64,
        #[arg(long, default_value_t = 20)]
        octic_trials: u64,
        #[arg(long, default_value_t = 500)]
        disc_samples: u64,
        /// Use this web file instead of sampling.
        #[arg(long)]
        web: Option<PathBuf>,
    },
    /// Nodes of the octic coming from the plane.
    Nodes {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        field: FieldArgs,
        /// Certify the node count with a Groebner basis.
        #[arg(long)]
        groebner: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        web: Option<PathBuf>,
    },
    /// Groebner degree of a census ideal.
    Census {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        field: FieldArgs,
        /// nodes10, bezout16, rank84-slice or veronese4.
        #[arg(long)]
        case: CensusCase,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sample or inspect web files.
    #[command(subcommand)]
    Web(WebCmd),
}

#[derive(Args)]
struct Common {
    /// Write the JSON lines here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Do not print the summary table.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum number of S-pairs to reduce.
    #[arg(long, env = "QUADWEB_BUDGET")]
    budget: Option<u64>,
    /// Maximum S-pair degree.
    #[arg(long, env = "QUADWEB_MAX_DEGREE")]
    max_degree: Option<u32>,
}

impl BudgetArgs {
    fn resolve(&self, default: Budget) -> Option<Budget> {
        if self.budget.is_none() && self.max_degree.is_none() {
            return None;
        }
        Some(Budget {
            max_pairs: self.budget.unwrap_or(default.max_pairs),
            max_degree: self.max_degree.unwrap_or(default.max_degree),
        })
    }
}

#[derive(Subcommand)]
enum WebCmd {
    /// Sample a seeded web and write it as JSON.
    Sample {
        #[command(flatten)]
        field: FieldArgs,
        /// Sample a web without a common plane.
        #[arg(long)]
        no_plane: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Validate a web file and print its hash and octic.
    Show {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn read_web(path: &PathBuf) -> Result<WebJson> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(WebJson::from_json_str(&text)?)
}

fn emit(report: &Report, common: &Common) -> Result<ExitCode> {
    let lines = report.to_json_lines();
    match &common.out {
        Some(path) => fs::write(path, &lines).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(lines.as_bytes())?,
    }
    if !common.quiet {
        eprint!("{}", report.summary_table());
    }
    Ok(if report.has_failures() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn config(command: Command, field: &FieldArgs) -> RunConfig {
    RunConfig { prime: field.prime, seed: field.seed, ..RunConfig::new(command) }
}

fn web_command(cmd: WebCmd) -> Result<ExitCode> {
    match cmd {
        WebCmd::Sample { field, no_plane, out } => {
            let ctx = PrimeField::new(field.prime)?;
            let plane = (!no_plane).then(|| Plane::standard(&ctx));
            let web = sample_web(&ctx, field.seed, plane)?;
            let j = WebJson::from_web(&ctx, &web);
            fs::write(&out, j.to_json_string()).with_context(|| format!("writing {}", out.display()))?;
            println!("{}", json!({"file": out, "hash": j.content_hash()}));
        }
        WebCmd::Show { input } => {
            let j = read_web(&input)?;
            let Some(p) = j.prime else { bail!("only prime-field webs can be shown") };
            let ctx = PrimeField::new(p)?;
            let web = j.to_web(&ctx)?;
            let octic = det_octic(&web)?;
            println!(
                "{}",
                json!({
                    "hash": j.content_hash(),
                    "prime": p,
                    "seed": j.seed,
                    "has_plane": web.plane().is_some(),
                    "octic_terms": octic.det_poly().len(),
                    "octic_degree": octic.det_poly().homogeneous_degree(),
                    "octic": octic.det_poly().to_canonical_string(),
                })
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let (cfg, common) = match cli.command {
        Cmd::Invariants(common) => (RunConfig::new(Command::Invariants), common),
        Cmd::Correspondence { common, field, trials, webs, octic_trials, disc_samples, web } => {
            let cfg = RunConfig {
                trials,
                webs,
                octic_trials,
                disc_samples,
                web: web.as_ref().map(read_web).transpose()?,
                ..config(Command::Correspondence, &field)
            };
            (cfg, common)
        }
        Cmd::Nodes { common, field, groebner, budget, web } => {
            let cfg = RunConfig {
                groebner,
                budget: budget.resolve(CensusCase::Nodes10.default_budget()),
                web: web.as_ref().map(read_web).transpose()?,
                ..config(Command::Nodes, &field)
            };
            (cfg, common)
        }
        Cmd::Census { common, field, case, budget } => {
            let cfg = RunConfig {
                case: Some(case),
                budget: budget.resolve(case.default_budget()),
                ..config(Command::Census, &field)
            };
            (cfg, common)
        }
        Cmd::Web(cmd) => return web_command(cmd),
    };
    let report = campaign::run(&cfg)?;
    emit(&report, &common)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

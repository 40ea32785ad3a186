//! Command-line front end: decide, series, volume and catalog runs over
//! groups and weight multisets given as descriptor strings.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use l2stack_core::catalog::run_catalog;
use l2stack_core::decide::decide_l2;
use l2stack_core::reps::{parse_rep, WeightRep};
use l2stack_core::rootdata::{root_datum_from_descriptor, RootDatum};
use l2stack_core::series::partial_sum;
use l2stack_core::weylvol::{cell_volume_report, DEFAULT_WEYL_CAP};

#[derive(Parser)]
#[command(
    name = "l2stack",
    about = "Square-integrability of linear quotient stacks over local fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the L2 property exactly and print the verdict line.
    Decide(JobArgs),
    /// Numerical partial sums of the convergence series.
    Series(JobArgs),
    /// Cartan-cell volume and integral-term report for one coweight.
    Volume(JobArgs),
    /// Run the built-in regression catalog.
    Catalog {
        /// Keep only cases whose name contains this substring.
        #[arg(long)]
        catalog_filter: Option<String>,
        /// Emit one JSON document instead of text lines.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct JobArgs {
    /// Group descriptor, e.g. "A1", "A2 x T3".
    #[arg(long)]
    group: Option<String>,
    /// Weight multiset descriptor, e.g. "adjoint", "config(standard, 3)".
    #[arg(long)]
    rep: Option<String>,
    /// Residue cardinality (at least 2).
    #[arg(long)]
    q: Option<u64>,
    /// Height cap for the series enumeration.
    #[arg(long = "H")]
    height: Option<u32>,
    /// Dominant coweight as comma-separated integers, e.g. "1,0,2".
    #[arg(long)]
    nu: Option<String>,
    /// TOML file with keys group, rep, q, H, nu; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Emit one JSON document instead of text lines.
    #[arg(long)]
    json: bool,
}

/// Configuration-file form of the job parameters.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct JobConfig {
    group: Option<String>,
    rep: Option<String>,
    q: Option<u64>,
    #[serde(rename = "H")]
    height: Option<u32>,
    nu: Option<Vec<i64>>,
}

/// Fully merged job parameters (flags override the config file).
struct Job {
    group: Option<String>,
    rep: Option<String>,
    q: Option<u64>,
    height: Option<u32>,
    nu: Option<Vec<i64>>,
    json: bool,
}

fn parse_nu_flag(text: &str) -> Result<Vec<i64>, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid coweight coordinate {:?}", part.trim()))
        })
        .collect()
}

fn merge(args: JobArgs) -> Result<Job, String> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            toml::from_str::<JobConfig>(&text)
                .map_err(|e| format!("invalid config {}: {e}", path.display()))?
        }
        None => JobConfig::default(),
    };
    let nu = match args.nu {
        Some(text) => Some(parse_nu_flag(&text)?),
        None => file.nu,
    };
    Ok(Job {
        group: args.group.or(file.group),
        rep: args.rep.or(file.rep),
        q: args.q.or(file.q),
        height: args.height.or(file.height),
        nu,
        json: args.json,
    })
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, String> {
    value.ok_or_else(|| format!("missing --{flag} (or config key)"))
}

fn load_group_rep(job: &Job) -> Result<(RootDatum, WeightRep), String> {
    let group = require(job.group.as_ref(), "group")?;
    let rep_text = require(job.rep.as_ref(), "rep")?;
    let rd = root_datum_from_descriptor(group).map_err(|e| format!("in --group: {e}"))?;
    let rep = parse_rep(&rd, rep_text).map_err(|e| format!("in --rep: {e}"))?;
    Ok((rd, rep))
}

fn weyl_cap() -> Result<u64, String> {
    match std::env::var("L2STACK_WEYL_CAP") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("invalid L2STACK_WEYL_CAP value {text:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_WEYL_CAP),
        Err(e) => Err(format!("invalid L2STACK_WEYL_CAP value: {e}")),
    }
}

fn rat_string(r: &l2stack_core::Rat) -> String {
    format!("{r}")
}

fn run_decide(job: Job) -> Result<u8, String> {
    let (rd, rep) = load_group_rep(&job)?;
    let verdict = decide_l2(&rd, &rep).map_err(|e| format!("{e}"))?;
    if job.json {
        let doc = json!({
            "command": "decide",
            "group": rd.to_descriptor(),
            "rep": rep.to_descriptor(),
            "verdict": if verdict.is_l2 { "L2" } else { "NOT_L2" },
            "m": verdict.max_value.as_ref().map(rat_string),
            "witness": verdict.witness,
            "certificate_present": verdict.certificate.is_some(),
            "lattice": verdict.metadata.lattice,
        });
        println!("{doc}");
    } else {
        println!("{}", verdict.verdict_line());
    }
    Ok(if verdict.is_l2 { 0 } else { 1 })
}

fn run_series(job: Job) -> Result<u8, String> {
    let (rd, rep) = load_group_rep(&job)?;
    let q = require(job.q, "q")?;
    let height = require(job.height, "H")?;
    let report = partial_sum(&rd, &rep, q, height).map_err(|e| format!("{e}"))?;
    if job.json {
        let checkpoints: Vec<_> = report
            .partial_sums
            .iter()
            .map(|c| json!({ "h": c.h, "count": c.count, "s": c.sum }))
            .collect();
        let doc = json!({
            "command": "series",
            "group": rd.to_descriptor(),
            "rep": rep.to_descriptor(),
            "q": report.q,
            "height_cap": report.height_cap,
            "checkpoints": checkpoints,
            "term_count": report.term_count,
            "hint": format!("{}", report.verdict_hint),
            "max_term_exponent": rat_string(&report.max_term_exponent),
        });
        println!("{doc}");
    } else {
        for c in &report.partial_sums {
            println!("h={} count={} S={}", c.h, c.count, c.sum);
        }
        println!(
            "terms={} hint={} max_exponent={}",
            report.term_count, report.verdict_hint, report.max_term_exponent
        );
    }
    Ok(0)
}

fn run_volume(job: Job) -> Result<u8, String> {
    let (rd, rep) = load_group_rep(&job)?;
    let q = require(job.q, "q")?;
    let nu = require(job.nu, "nu")?;
    let cap = weyl_cap()?;
    let report = cell_volume_report(&rd, &rep, &nu, q, cap).map_err(|e| format!("{e}"))?;
    if job.json {
        let doc = json!({
            "command": "volume",
            "group": rd.to_descriptor(),
            "rep": rep.to_descriptor(),
            "nu": report.nu,
            "q": report.q,
            "flag_count": report.flag_count.to_string(),
            "cell_volume": rat_string(&report.cell_volume),
            "integral_term": rat_string(&report.integral_term.rational),
            "integral_term_sqrt": report.integral_term.times_sqrt_q,
            "ratio": rat_string(&report.sandwich_ratio),
        });
        println!("{doc}");
    } else {
        println!("{report}");
    }
    Ok(0)
}

fn run_catalog_cmd(filter: Option<String>, json_out: bool) -> Result<u8, String> {
    let report = run_catalog(filter.as_deref());
    if json_out {
        let cases: Vec<_> = report
            .results
            .iter()
            .map(|r| {
                json!({
                    "name": r.case.name,
                    "expected": format!("{}", r.case.expected),
                    "got": if r.verdict.is_l2 { "L2" } else { "NOT_L2" },
                    "m": r.verdict.max_value.as_ref().map(rat_string),
                    "status": format!("{}", r.status),
                })
            })
            .collect();
        let comparison: Vec<_> = report
            .results
            .iter()
            .filter_map(|r| {
                r.very_good.or(r.case.expected_very_good).map(|vg| {
                    json!({
                        "name": r.case.name,
                        "very_good": vg,
                        "l2": r.verdict.is_l2,
                    })
                })
            })
            .collect();
        let doc = json!({
            "command": "catalog",
            "cases": cases,
            "comparison": comparison,
            "cases_total": report.results.len(),
            "failures": report.failures,
            "findings": report.findings,
        });
        println!("{doc}");
    } else {
        println!("{report}");
    }
    Ok(if report.failures > 0 { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Decide(args) => merge(args).and_then(run_decide),
        Command::Series(args) => merge(args).and_then(run_series),
        Command::Volume(args) => merge(args).and_then(run_volume),
        Command::Catalog { catalog_filter, json } => run_catalog_cmd(catalog_filter, json),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

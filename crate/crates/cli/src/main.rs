//! `djf`: batch front end over dijoin-core.
//!
//! Exit codes: 0 success, 1 internal error, 2 verified negative answer,
//! 3 size guard or budget hit, 4 bad input.

mod report;
mod verbs;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use dijoin_core::limits::{limits, set_limits, Limits};
use report::{digest, Outcome, RunReport};

#[derive(Parser, Debug)]
#[command(name = "djf", version, about = "Dicuts, dijoins, flows and strongly connected orientations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    /// Seed for generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Time budget in seconds for exhaustive searches.
    #[arg(long, global = true)]
    budget: Option<f64>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    #[serde(skip)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Verb {
    /// Minimum dicut of a digraph (weights used when present).
    MinDicut(verbs::Input),
    /// Whether an arc set meets every dicut at least `tau` times.
    CheckDijoin(verbs::CheckDijoin),
    /// Global edge connectivity of the underlying graph.
    EdgeConnectivity(verbs::Input),
    /// Nowhere-zero 6-flow of a bridgeless graph.
    SixFlow(verbs::Input),
    /// Check a flow file against a graph.
    VerifyFlow(verbs::VerifyFlow),
    /// Exhaustive search for a k-cut-balanced orientation and its flow.
    BalancedOrientation(verbs::Balanced),
    /// Disjoint spanning arborescences at a root.
    PackArborescences(verbs::PackArb),
    /// Disjoint dijoins through a flow of the underlying graph.
    PackDijoins(verbs::PackDijoins),
    /// Membership of a bidirected weight vector in P0, P1, Q0 or Q1.
    Member(verbs::Member),
    /// Exhaustive decomposition into SCOs or SCDs.
    Decompose(verbs::Decompose),
    /// Digraph whose dicuts encode a tau-SCO.
    Gadget(verbs::Gadget),
    /// Built-in instances and their checks.
    Fixtures(verbs::Fixtures),
    /// Orientation search on a mixed graph against pseudo-dicuts.
    ExploreMixed(verbs::ExploreMixed),
    /// Generate an instance.
    Gen(verbs::Gen),
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::MinDicut(_) => "min-dicut",
            Verb::CheckDijoin(_) => "check-dijoin",
            Verb::EdgeConnectivity(_) => "edge-connectivity",
            Verb::SixFlow(_) => "six-flow",
            Verb::VerifyFlow(_) => "verify-flow",
            Verb::BalancedOrientation(_) => "balanced-orientation",
            Verb::PackArborescences(_) => "pack-arborescences",
            Verb::PackDijoins(_) => "pack-dijoins",
            Verb::Member(_) => "member",
            Verb::Decompose(_) => "decompose",
            Verb::Gadget(_) => "gadget",
            Verb::Fixtures(_) => "fixtures",
            Verb::ExploreMixed(_) => "explore-mixed",
            Verb::Gen(_) => "gen",
        }
    }

    fn input(&self) -> Option<&PathBuf> {
        match self {
            Verb::MinDicut(a) | Verb::EdgeConnectivity(a) | Verb::SixFlow(a) => Some(&a.input),
            Verb::CheckDijoin(a) => Some(&a.input.input),
            Verb::VerifyFlow(a) => Some(&a.input.input),
            Verb::BalancedOrientation(a) => Some(&a.input.input),
            Verb::PackArborescences(a) => Some(&a.input.input),
            Verb::PackDijoins(a) => Some(&a.input.input),
            Verb::Member(a) => Some(&a.input.input),
            Verb::Decompose(a) => Some(&a.input.input),
            Verb::Gadget(a) => Some(&a.input.input),
            Verb::ExploreMixed(a) => Some(&a.input.input),
            Verb::Fixtures(_) | Verb::Gen(_) => None,
        }
    }
}

/// Guard limits from `DJF_*` variables, e.g. `DJF_CUT_SCAN_VERTICES=22`.
fn limits_from_env() -> Result<Limits, String> {
    let mut l = limits();
    let fields: [(&str, &mut usize); 6] = [
        ("DJF_DICUT_VERTICES", &mut l.dicut_vertices),
        ("DJF_CUT_SCAN_VERTICES", &mut l.cut_scan_vertices),
        ("DJF_ORIENTATION_EDGES", &mut l.orientation_edges),
        ("DJF_SCO_FREE_EDGES", &mut l.sco_free_edges),
        ("DJF_SCD_SUPPORT", &mut l.scd_support),
        ("DJF_MIXED_VERTICES", &mut l.mixed_vertices),
    ];
    for (key, slot) in fields {
        if let Ok(v) = std::env::var(key) {
            *slot = v.parse().map_err(|_| format!("{key}={v:?} is not a count"))?;
        }
    }
    Ok(l)
}

fn parameters(cli: &Cli) -> BTreeMap<String, Value> {
    let mut map = BTreeMap::new();
    for v in [serde_json::to_value(&cli.global), serde_json::to_value(&cli.verb)]
        .into_iter()
        .flatten()
    {
        if let Value::Object(o) = v {
            map.extend(o.into_iter().filter(|(_, v)| !v.is_null()));
        }
    }
    map
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut digest_hex = None;
    let done = (|| {
        set_limits(limits_from_env().map_err(verbs::input_error)?);
        if let Some(t) = cli.global.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .map_err(|e| verbs::input_error(format!("--threads: {e}")))?;
        }
        let text = match cli.verb.input() {
            Some(path) => {
                let bytes = std::fs::read(path)
                    .map_err(|e| verbs::input_error(format!("{}: {e}", path.display())))?;
                digest_hex = Some(digest(&bytes));
                Some(String::from_utf8(bytes).map_err(|_| verbs::input_error("input is not UTF-8"))?)
            }
            None => None,
        };
        verbs::run(&cli.verb, text.as_deref().unwrap_or(""), &cli.global)
    })();
    let done = done.unwrap_or_else(|e| e);
    let report = RunReport {
        verb: cli.verb.name().to_string(),
        input_digest: digest_hex,
        parameters: parameters(&cli),
        outcome: done.outcome,
        summary: done.summary,
        result: done.result,
        wall_time_ms: start.elapsed().as_millis(),
    };
    match cli.global.report {
        ReportFormat::Json => match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{s}"),
            Err(e) => eprintln!("cannot serialize report: {e}"),
        },
        ReportFormat::Text => {
            // With an artifact on stdout the summary moves to stderr.
            match (report.outcome, &done.text) {
                (Outcome::Success | Outcome::Negative, Some(t)) => {
                    print!("{t}");
                    eprintln!("{}", report.summary);
                }
                (Outcome::Success | Outcome::Negative, None) => println!("{}", report.summary),
                _ => eprintln!("error: {}", report.summary),
            }
        }
    }
    ExitCode::from(report.outcome.exit_code())
}

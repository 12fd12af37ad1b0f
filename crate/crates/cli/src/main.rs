//! cbnv: exact verification of Clifford-group structure claims.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use cbnv_core::bn::{verify_pair, BNReport, CheckMode, PairSpec};
use cbnv_core::cache::GroupCache;
use cbnv_core::claims::{self, GroupStore, RunConfig};
use cbnv_core::coxeter::{CoxeterType, CoxeterTypeData};
use cbnv_core::gate::GateMatrix;
use cbnv_core::group::closure;
use cbnv_core::report;

#[derive(Parser)]
#[command(name = "cbnv", version, about = "Exact checks of Clifford-group structure claims")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check claims by id and print the report as JSON.
    Verify(VerifyArgs),
    /// Print the claim registry.
    List,
    /// Inspect the on-disk closure cache.
    Cache(CacheCmd),
    /// Check one BN-pair configuration and print its report as JSON.
    Pair(PairArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim ids such as CLM-03, or "all".
    #[arg(required = true)]
    ids: Vec<String>,
    /// Run opt-in exhaustive scans where the default is seeded sampling.
    #[arg(long)]
    exhaustive: bool,
    /// Triple count for sampled scans.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker count; accepted for interface stability, execution is sequential.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Seed for sampled scans.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Closure cache directory.
    #[arg(long, default_value = "cbnv-cache")]
    cache_dir: PathBuf,
    /// Also write the report to this path; `.md` renders markdown, anything
    /// else writes JSON.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct CacheCmd {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Re-read every cache file and validate closure and inverse tables.
    Check {
        #[arg(long, default_value = "cbnv-cache")]
        cache_dir: PathBuf,
    },
}

#[derive(Args)]
struct PairArgs {
    /// c2-pair, c2-hat-split-pair, c3-pair, gl2f2-toy, or "custom".
    name: String,
    /// JSON file with explicit generator lists; required for "custom".
    #[arg(long)]
    gens: Option<PathBuf>,
    /// Use a seeded sampled axiom (I) scan with this many triples instead of
    /// the exhaustive scan.
    #[arg(long)]
    sampled: Option<u64>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Closure cache directory (used by the named configurations).
    #[arg(long, default_value = "cbnv-cache")]
    cache_dir: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::List => list(),
        Command::Cache(cmd) => cache_cmd(cmd),
        Command::Pair(args) => pair_cmd(args),
    }
}

fn verify(args: VerifyArgs) -> Result<i32> {
    if args.jobs != 1 {
        eprintln!("note: --jobs {} accepted; execution is sequential", args.jobs);
    }
    let store = GroupStore::new(Some(&args.cache_dir))?;
    let cfg = RunConfig {
        exhaustive: args.exhaustive,
        budget: args.budget,
        jobs: args.jobs,
        seed: args.seed,
        cache_dir: Some(args.cache_dir.clone()),
    };
    let reports = if args.ids.iter().any(|id| id == "all") {
        claims::run_all(&store, &cfg)
    } else {
        claims::run(&store, &args.ids, &cfg)
    };
    println!("{}", report::to_json(&reports));
    if let Some(path) = &args.report {
        let text = if path.extension().and_then(|e| e.to_str()) == Some("md") {
            report::to_markdown(&reports)
        } else {
            report::to_json(&reports)
        };
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report::exit_code(&reports))
}

fn list() -> Result<i32> {
    for row in claims::list() {
        println!("{:<8} {:<36} {}", row.id, row.scale, row.quote);
    }
    Ok(0)
}

fn cache_cmd(cmd: CacheCmd) -> Result<i32> {
    match cmd.action {
        CacheAction::Check { cache_dir } => {
            let cache = GroupCache::new(&cache_dir)?;
            let entries = cache.check()?;
            if entries.is_empty() {
                println!("cache {}: empty", cache_dir.display());
                return Ok(0);
            }
            let mut bad = 0;
            for e in &entries {
                let status = if e.ok {
                    "ok"
                } else {
                    bad += 1;
                    "CORRUPT"
                };
                println!(
                    "{:<7} {:<16} kind {}  {:>9} elements  {:>12} bytes  {}",
                    status, e.name, e.kind, e.count, e.bytes, e.detail
                );
            }
            Ok(if bad == 0 { 0 } else { 2 })
        }
    }
}

fn pair_cmd(args: PairArgs) -> Result<i32> {
    let mode = match args.sampled {
        Some(triples) => CheckMode::Sampled { triples, seed: args.seed },
        None => CheckMode::Exhaustive,
    };
    let report = if args.name == "custom" {
        let path = args.gens.as_ref().context("custom pairs need --gens FILE")?;
        custom_pair(path, mode)?
    } else {
        let store = GroupStore::new(Some(&args.cache_dir))?;
        claims::verify_named_pair(&store, &args.name, mode)?
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(0)
}

/// On-disk description of an explicit pair: generator matrices in the same
/// JSON form `GateMatrix::to_json` emits.
#[derive(serde::Deserialize)]
struct CustomPair {
    name: String,
    g: Vec<serde_json::Value>,
    b: Vec<serde_json::Value>,
    n: Vec<serde_json::Value>,
    #[serde(default)]
    claimed_w_order: Option<u64>,
    #[serde(default)]
    s_types: Vec<String>,
    #[serde(default)]
    check_split: bool,
    #[serde(default = "default_closure_budget")]
    closure_budget: usize,
    #[serde(default = "default_cert_budget")]
    cert_budget: usize,
}

fn default_closure_budget() -> usize {
    200_000
}

fn default_cert_budget() -> usize {
    10_000_000
}

fn parse_gens(which: &str, values: &[serde_json::Value]) -> Result<Vec<GateMatrix>> {
    if values.is_empty() {
        bail!("generator list {which:?} is empty");
    }
    values
        .iter()
        .map(|v| {
            GateMatrix::from_json(&v.to_string())
                .with_context(|| format!("parsing a generator of {which:?}"))
        })
        .collect()
}

fn parse_s_type(tag: &str) -> Result<CoxeterTypeData> {
    let t = match tag.to_ascii_lowercase().as_str() {
        "d5" => CoxeterType::D5,
        "f4" => CoxeterType::F4,
        "e6" => CoxeterType::E6,
        "e7" => CoxeterType::E7,
        other => match other.strip_prefix('a').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 1 => CoxeterType::A(n),
            _ => bail!("unknown Coxeter type tag {tag:?}"),
        },
    };
    Ok(t.data())
}

fn custom_pair(path: &Path, mode: CheckMode) -> Result<BNReport> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: CustomPair = serde_json::from_str(&text).context("parsing the pair description")?;
    let g = closure(&parse_gens("g", &spec.g)?, spec.closure_budget)?;
    let b = closure(&parse_gens("b", &spec.b)?, spec.closure_budget)?;
    let n = Arc::new(closure(&parse_gens("n", &spec.n)?, spec.closure_budget)?);
    let s_types: Vec<CoxeterTypeData> =
        spec.s_types.iter().map(|t| parse_s_type(t)).collect::<Result<_>>()?;
    let pair = PairSpec {
        name: &spec.name,
        g: &g,
        b: &b,
        n: &n,
        claimed_h: None,
        claimed_w_order: spec.claimed_w_order,
        s_types: &s_types,
        w_reference: None,
        check_split: spec.check_split,
        cert_budget: spec.cert_budget,
    };
    Ok(verify_pair(&pair, mode)?)
}

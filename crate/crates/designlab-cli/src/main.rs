//! `designlab` — exact and Monte Carlo entanglement statistics of random
//! unitary channels and random pure states.
//!
//! Subcommands: `verify` (deterministic self-check suites), `table`
//! (reference tables of exact values), `mc` (seeded Monte Carlo estimate
//! with reference and verdict), `bounds` (analytic bound suite), `census`
//! (genus census of the symmetric group).
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 configuration
//! error. Every emitted number carries a provenance tag
//! (exact | bound | monte-carlo) and a self-describing anchor formula.

mod bounds;
mod census;
mod mc;
mod report;
mod table;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use bounds::SettingKind;
use report::{ConfigEcho, OutputFormat, Record, RunReport, Timestamp};
use table::TableName;
use verify::{Suite, VerifyCtx};

/// Default RNG seed when neither --seed, a spec-file seed, nor the
/// environment provides one.
pub(crate) const DEFAULT_SEED: u64 = 0xD1CE;
/// Environment fallback for the seed.
pub(crate) const SEED_ENV_VAR: &str = "DESIGNLAB_SEED";
/// Default statistical acceptance band, in standard errors.
pub(crate) const DEFAULT_BAND: f64 = 4.0;

#[derive(Parser)]
#[command(
    name = "designlab",
    version,
    about = "Exact and Monte Carlo entanglement statistics of random unitary channels and random pure states",
    disable_help_subcommand = true
)]
struct Cli {
    /// 64-bit RNG seed. Resolution order: this flag, then the spec file's
    /// seed (mc only), then $DESIGNLAB_SEED, then 53710 (0xD1CE).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for sampling (0 = one per logical core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Multiplies every statistical acceptance band (default band: 4
    /// standard errors). Exact checks are unaffected.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out_file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a deterministic self-check suite; exit 0 iff every check passes.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Print a reference table of exact values and matching expressions.
    Table {
        #[arg(value_enum)]
        name: TableName,
    },
    /// Monte Carlo estimate of one observable of an ensemble, with the
    /// exact reference and a z-scored verdict when a reference exists.
    Mc {
        /// JSON ensemble description, e.g. {"kind":"haar-unitary","d":16}
        /// with an optional "seed" field.
        #[arg(long)]
        spec_file: PathBuf,
        /// moment:<alpha>[:<s>] | entropy:<alpha|inf> | min-entropy |
        /// operator-norm | sqrt-operator-norm
        #[arg(long)]
        query: String,
        /// Sample count.
        #[arg(long, default_value_t = 20_000)]
        n: usize,
        /// Input-side factor dimension d_A of the analyzed block
        /// (default: equal split, requires a square dimension).
        #[arg(long)]
        split: Option<usize>,
        /// Analyze the A⊗D block instead of A⊗C (channel ensembles).
        #[arg(long)]
        side_ad: bool,
    },
    /// Evaluate every applicable analytic bound at given parameters.
    Bounds {
        #[arg(long, value_enum)]
        kind: SettingKind,
        /// Comma-separated dimensions: d_A,d_B (state or symmetric channel
        /// split) or d_A,d_B,d_C,d_D (general channel split).
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 2)]
        alpha: usize,
    },
    /// Genus census of S_n for n up to --max-n: exhaustive count vs the
    /// closed-form census.
    Census {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

fn env_seed() -> Result<Option<u64>, String> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(raw) => {
            let t = raw.trim();
            let parsed = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
                u64::from_str_radix(hex, 16)
            } else {
                t.parse::<u64>()
            };
            parsed.map(Some).map_err(|_| {
                format!("{SEED_ENV_VAR} must be a 64-bit unsigned integer (decimal or 0x-hex), got {raw:?}")
            })
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("{SEED_ENV_VAR}: {e}")),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 2u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, start) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, start: Instant) -> Result<bool, String> {
    if !(cli.tolerance_scale.is_finite() && cli.tolerance_scale > 0.0) {
        return Err(format!(
            "--tolerance-scale must be a positive number, got {}",
            cli.tolerance_scale
        ));
    }
    if cli.workers > 0 {
        // The global pool can only be initialized once; any later call in
        // this process would be a bug, so surface it.
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
            .map_err(|e| format!("cannot configure {} workers: {e}", cli.workers))?;
    }
    let band = DEFAULT_BAND * cli.tolerance_scale;
    let env = env_seed()?;
    let default_seed = cli.seed.or(env).unwrap_or(DEFAULT_SEED);

    let (command, params, seed, records): (&str, String, u64, Vec<Record>) = match &cli.command {
        Command::Verify { suite } => {
            let ctx = VerifyCtx {
                seed: default_seed,
                band,
            };
            (
                "verify",
                format!("suite={}", suite.as_str()),
                default_seed,
                verify::run_suite(*suite, &ctx),
            )
        }
        Command::Table { name } => (
            "table",
            format!("name={}", name.as_str()),
            default_seed,
            table::run_table(*name),
        ),
        Command::Mc {
            spec_file,
            query,
            n,
            split,
            side_ad,
        } => {
            let args = mc::McArgs {
                spec_file: spec_file.clone(),
                query: query.clone(),
                n: *n,
                split: *split,
                side_ad: *side_ad,
            };
            let outcome = mc::run_mc(&args, cli.seed, env, band)?;
            ("mc", outcome.params, outcome.seed, outcome.records)
        }
        Command::Bounds { kind, dims, alpha } => {
            let (params, records) = bounds::run_bounds(*kind, dims, *alpha)?;
            ("bounds", params, default_seed, records)
        }
        Command::Census { max_n } => {
            let (params, records) = census::run_census(*max_n)?;
            ("census", params, default_seed, records)
        }
    };

    let all_pass = records.iter().all(|r| r.status != "fail");
    let unix_ms = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0);
    let report = RunReport {
        command: command.to_string(),
        config: ConfigEcho {
            params,
            seed,
            workers: cli.workers,
            output: cli.output.as_str().to_string(),
            tolerance_scale: cli.tolerance_scale,
        },
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: Timestamp {
            unix_ms,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
        results: records,
    };
    let rendered = report::render(&report, cli.output)?;
    match &cli.out_file {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(all_pass)
}

//! Command-line harness for the dpsimplex solver.

mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dpsimplex::{KleeMintyVariant, PivotRule};

#[derive(Parser)]
#[command(name = "dpsimplex", version, about = "Double-pivot simplex solver and benchmark harness")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Arithmetic backend
    #[arg(long, global = true, value_enum, default_value_t = Backend::Double)]
    pub backend: Backend,
    /// Reduced-cost tolerance (relative)
    #[arg(long, global = true)]
    pub tol_cost: Option<f64>,
    /// Ratio-test pivot tolerance (relative)
    #[arg(long, global = true)]
    pub tol_ratio: Option<f64>,
    /// Feasibility tolerance (relative)
    #[arg(long, global = true)]
    pub tol_feas: Option<f64>,
    /// Singularity tolerance (relative)
    #[arg(long, global = true)]
    pub tol_sing: Option<f64>,
    /// Iteration cap per solve
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_iter: usize,
    /// Iterations without progress before the anti-stall guard engages
    #[arg(long, global = true, default_value_t = 50)]
    pub stall_window: usize,
    /// Seed for generated instances
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (standard output when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON output
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// CSV output
    #[arg(long, global = true)]
    pub csv: bool,
    /// Leave wall-time columns empty so reruns are byte-identical
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Per-iteration JSON lines; `-` writes to standard error
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,
    /// Worker threads for benchmark cells (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Double,
    Rational,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve an LP file
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "double", value_parser = parse_rule)]
        rule: PivotRule,
        /// Initial basis as 1-based column indices; defaults to the slack identity
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
        /// Skip redundant-row elimination in the two-variable sub-problem
        #[arg(long)]
        no_pruning: bool,
    },
    /// Write a generated instance in the text format
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Klee-Minty iteration table
    BenchKm {
        #[arg(long, value_delimiter = ',', default_value = "v1,v2,v3", value_parser = parse_variant)]
        variants: Vec<KleeMintyVariant>,
        /// Sizes, e.g. `2-10` or `2,4,8`
        #[arg(long, default_value = "2-10", value_parser = parse_sizes)]
        m: Sizes,
        #[arg(long, value_delimiter = ',', default_value = "dantzig,two-most-negative,double", value_parser = parse_rule)]
        rules: Vec<PivotRule>,
    },
    /// Random-instance comparison with per-rule means
    BenchRandom {
        #[arg(long, default_value = "10", value_parser = parse_sizes)]
        m: Sizes,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, value_delimiter = ',', default_value = "dantzig,double", value_parser = parse_rule)]
        rules: Vec<PivotRule>,
        /// Also write the per-rule means as CSV
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Compare solver optima against brute-force basis enumeration
    OracleCheck {
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, value_delimiter = ',', default_value = "dantzig,double", value_parser = parse_rule)]
        rules: Vec<PivotRule>,
    },
    /// Check an optimal run against the iteration bound built from its trackers
    Audit {
        #[command(subcommand)]
        source: AuditSource,
        #[arg(long, global = true, default_value = "double", value_parser = parse_rule)]
        rule: PivotRule,
    },
}

#[derive(Subcommand, Clone)]
pub enum GenerateKind {
    /// Klee-Minty cube in standard form
    Km {
        #[arg(long, default_value = "v3", value_parser = parse_variant)]
        variant: KleeMintyVariant,
        #[arg(long)]
        m: usize,
    },
    /// Dense random instance `[M | I] x = b` (seed from `--seed`)
    Random {
        #[arg(long)]
        m: usize,
        /// Total columns, at least `m`; defaults to `2m`
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand, Clone)]
pub enum AuditSource {
    /// An LP file with a slack identity
    File { file: PathBuf },
    /// Klee-Minty cube (optimum known in closed form)
    Km {
        #[arg(long, default_value = "v3", value_parser = parse_variant)]
        variant: KleeMintyVariant,
        #[arg(long)]
        m: usize,
    },
    /// Random instance (seed from `--seed`)
    Random {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sizes(pub Vec<usize>);

fn parse_rule(s: &str) -> Result<PivotRule, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<KleeMintyVariant, String> {
    s.parse()
}

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad size `{t}`"));
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err("sizes must be a non-empty list of positive integers".into());
    }
    Ok(Sizes(out))
}

/// Exit codes: 0 optimal/ok, 1 input or I/O error, 2 unbounded,
/// 3 iteration limit or numerical failure, 4 a verification failed.
fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global();
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

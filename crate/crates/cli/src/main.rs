//! `lowlight` command-line front end.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "lowlight", version, about = "Low-light spanning trees of finite metric spaces")]
struct Cli {
    /// Record wall-clock seconds in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a depth-bounded low-light tree.
    Build(BuildArgs),
    /// Build a low-light tree, then make it shallow as well.
    Sllt(SlltArgs),
    /// Reduce arity or raise depth of an existing tree.
    Normalize(NormalizeArgs),
    /// Measure an existing tree.
    Metrics(MetricsArgs),
    /// Exact minima by exhaustive search, with analytic bounds.
    Oracle(OracleArgs),
    /// Construction load against lower bounds for every depth on the line.
    Tradeoff(TradeoffArgs),
    /// Scan all spanning trees of the path-plus-hub graph.
    Hardgraph(HardgraphArgs),
    /// Run the acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(clap::Args, Debug)]
struct BuildArgs {
    /// Metric file, or `line_N` for the line on N points.
    #[arg(long)]
    input: String,
    /// Depth budget.
    #[arg(long)]
    h: usize,
    #[arg(long)]
    root: Option<usize>,
    /// Write the tree here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct SlltArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    h: usize,
    #[arg(long, default_value_t = lowlight::sllt::DEFAULT_THETA, conflicts_with = "epsilon")]
    theta: f64,
    /// Target root-distance stretch `1 + epsilon`; sets theta to epsilon / 2.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    root: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    #[value(name = "4ary")]
    FourAry,
    Binary,
    Deepen,
}

#[derive(clap::Args, Debug)]
struct NormalizeArgs {
    /// Tree file (`root R` then `parent child [weight]` lines).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    metric: String,
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct MetricsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    metric: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleStat {
    Weight,
    Covering,
    Cost,
    Hamming,
}

#[derive(clap::Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    h: usize,
    #[arg(long, value_enum)]
    stat: OracleStat,
    /// Largest n the exhaustive search accepts.
    #[arg(long, env = lowlight::oracle::CAP_ENV)]
    cap: Option<usize>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct TradeoffArgs {
    #[arg(long)]
    n: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = lowlight::oracle::CAP_ENV)]
    cap: Option<usize>,
}

#[derive(clap::Args, Debug)]
struct HardgraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "W", default_value_t = 100)]
    w: u64,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = lowlight::verify::VerifyConfig::default().seed)]
    seed: u64,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

mod commands;
mod report;
mod witness;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "reorient", version, about = "Reversal, orientation and deorientation problems on mixed graphs")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for commands that can split work (verify-reduction).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Omit the elapsed time from the report.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a predicate, optionally after applying a witness.
    Check(CheckArgs),
    /// Solve a problem exactly.
    Solve(SolveArgs),
    /// Run a polynomial-time algorithm.
    Poly(PolyArgs),
    /// Run an approximation algorithm.
    Approx(ApproxArgs),
    /// Build the target instance of a reduction.
    Reduce(ReduceArgs),
    /// Solve both sides of a reduction and check that the answers and the
    /// solution maps agree.
    VerifyReduction(VerifyArgs),
    /// Generate an instance.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    /// k-strong (vertex connectivity).
    Strong,
    /// k-arc-strong; on undirected graphs k-edge-connected.
    ArcStrong,
    /// Underlying graph k-edge-connected.
    EdgeConnected,
    /// Local requirements from the instance file.
    Requirement,
    /// Every vertex has k in- and k out-going elements.
    Degree,
    Cactus,
    /// Thomassen's condition for a k-strong orientation (k = 2 decidable).
    OrientationCondition,
    /// 4-edge-connected and 2-edge-connected after deleting any vertex.
    Thomassen,
    /// 2-arc-strong and strong after deleting any terminal.
    Independent,
    ClassG,
    S3bShape,
    /// The witness is a vertex cover of size at most k.
    VertexCover,
    /// The witness satisfies at least k clauses.
    Max2sat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Apply {
    Reverse,
    Deorient,
    Double,
    Orient,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub mode: CheckMode,
    #[arg(long)]
    pub k: Option<usize>,
    /// Transformation applied before the check.
    #[arg(long, value_enum)]
    pub apply: Option<Apply>,
    /// Witness elements, comma or space separated.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub witness: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    /// Minimum arc reversals (target strong or arc-strong).
    Reversal,
    /// Minimum reversals making a digraph 2-strong.
    M2sar,
    /// Minimum deorientations (target strong, arc-strong or requirement).
    Deorientation,
    /// Minimum deorientations making a digraph 3-strong.
    #[value(name = "3sdo")]
    Sdo3,
    /// Minimum deorientations making a digraph k-strong.
    Lsdo,
    /// Minimum deorientations meeting the file's requirement.
    Lcdo,
    /// Minimum-weight edge doubling (target arc-strong or thomassen).
    Doubling,
    #[value(name = "4eda")]
    Eda4,
    #[value(name = "w23eda")]
    W23eda,
    /// Maximum number of oriented edges keeping the target.
    PartialOrientation,
    /// An orientation meeting the file's requirement (or the target).
    Orientation,
    /// Orientation that is 2-arc-strong and strong without any terminal.
    I2vcomg,
    Vc,
    Max2sat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetKind {
    Strong,
    ArcStrong,
    Requirement,
    Thomassen,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    pub file: PathBuf,
    /// Cost bound (a minimum for maximization problems); defaults to the
    /// file's `budget` line.
    #[arg(long)]
    pub budget: Option<String>,
    #[arg(long, value_enum)]
    pub target: Option<TargetKind>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Weights file overriding the instance's `w` lines.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Abort the search after this many nodes.
    #[arg(long)]
    pub max_nodes: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyKind {
    /// Minimum-weight doubling of a cactus to 3-edge-connectivity.
    W23eda,
    /// Minimum deorientation satisfying the degree condition.
    Degrees,
    /// Strong partial orientation with a given number of oriented edges.
    Robbins,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(value_enum)]
    pub which: PolyKind,
    pub file: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Edges to orient (robbins); defaults to the maximum.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApproxKind {
    /// 2-approximate deorientation to k-arc-strong.
    Deor,
    /// Approximate doubling to 4-edge-connectivity with the exact plug.
    M4eda,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    #[arg(value_enum)]
    pub which: ApproxKind,
    pub file: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReductionKind {
    /// Terminal-independent orientation to 2-strong reversal.
    M2sar,
    /// Balanced MAX-2-SAT to 3-strong deorientation.
    #[value(name = "3sdo")]
    Sdo3,
    /// 3-strong deorientation to l-strong deorientation.
    Lstrong,
    /// Vertex cover to 4-edge-connectivity doubling.
    Vc4eda,
    /// Requirement orientation to its hardened form.
    LcoHarden,
    /// Requirement orientation to requirement deorientation.
    Lcdo,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub name: ReductionKind,
    pub file: PathBuf,
    /// Satisfied-clause target (3sdo) or strength (lstrong).
    #[arg(long)]
    pub ell: Option<usize>,
    /// Cover size bound (vc4eda); defaults to the file's budget.
    #[arg(long)]
    pub k: Option<usize>,
    /// Write the instance here and the labelled sidecar to `<out>.prov`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub name: ReductionKind,
    pub file: PathBuf,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub max_nodes: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RocketDir {
    Out,
    In,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    Rocket {
        k: usize,
        #[arg(value_enum)]
        dir: RocketDir,
    },
    RandomDigraph {
        n: usize,
        m: usize,
        #[arg(value_parser = parse_seed)]
        seed: u64,
    },
    RandomMultigraph {
        n: usize,
        m: usize,
        #[arg(value_parser = parse_seed)]
        seed: u64,
    },
    Cactus {
        n: usize,
        #[arg(value_parser = parse_seed)]
        seed: u64,
    },
    /// Double subdivision of the cubic graph in the file.
    ClassGFrom { file: PathBuf },
    S3bSat {
        vars: usize,
        #[arg(value_parser = parse_seed)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Accepts `7` or `seed=7`.
fn parse_seed(s: &str) -> Result<u64, String> {
    s.strip_prefix("seed=").unwrap_or(s).parse().map_err(|e| format!("bad seed `{s}`: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let ctx = commands::Context { threads: cli.threads.max(1) };
    let (name, result) = match &cli.command {
        Command::Check(a) => ("check", commands::check(a)),
        Command::Solve(a) => ("solve", commands::solve(a)),
        Command::Poly(a) => ("poly", commands::poly(a)),
        Command::Approx(a) => ("approx", commands::approx(a)),
        Command::Reduce(a) => ("reduce", commands::reduce(a)),
        Command::VerifyReduction(a) => ("verify-reduction", commands::verify(a, &ctx)),
        Command::Gen(a) => ("gen", commands::gen(a)),
    };
    let mut report = result.unwrap_or_else(|msg| Report::error(name, msg));
    if !cli.no_timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => match &report.output {
            Some(out) if report.status == Status::Feasible => {
                print!("{out}");
                eprint!("{}", report.to_text());
            }
            _ => print!("{}", report.to_text()),
        },
    }
    ExitCode::from(report.status.exit_code() as u8)
}

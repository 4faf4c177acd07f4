use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "chunkpart", version, about = "Edge ordering and chunk-based edge partitioning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic graph
    Gen(GenArgs),
    /// Order the edges of a graph and write an ordered edge list
    Order(OrderArgs),
    /// Partition a graph into k parts
    Partition(PartitionArgs),
    /// Report replication factor, balance and the ordering objective
    Evaluate(EvaluateArgs),
    /// Replay a sequence of partition counts and report migration
    Scale(ScaleArgs),
    /// Analytic replication-factor bounds
    Bound(BoundArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub model: GenModel,
    /// Output path; stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write a canonical binary graph instead of a text edge list
    #[arg(long, global = true)]
    pub binary: bool,
}

#[derive(Subcommand)]
pub enum GenModel {
    /// Recursive-matrix graph
    Rmat {
        #[arg(long)]
        scale: u32,
        #[arg(long, default_value_t = 16)]
        edge_factor: u64,
        #[arg(long, default_value_t = 0.57)]
        a: f64,
        #[arg(long, default_value_t = 0.19)]
        b: f64,
        #[arg(long, default_value_t = 0.19)]
        c: f64,
        #[arg(long, default_value_t = 0.05)]
        d: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniform graph with exactly m edges
    Er {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Algo {
    Geo,
    GeoBaseline,
    Input,
    Random,
    Bfs,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RestartArg {
    Random,
    LowestId,
}

#[derive(Args)]
pub struct OrderArgs {
    /// Text edge list or binary graph
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "geo")]
    pub algo: Algo,
    #[arg(long, default_value_t = 4)]
    pub kmin: u64,
    #[arg(long, default_value_t = 128)]
    pub kmax: u64,
    /// Two-hop window; defaults to |E| / kmax
    #[arg(long)]
    pub delta: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// How the expansion restarts when its frontier empties
    #[arg(long, value_enum, default_value = "random")]
    pub restart: RestartArg,
    /// Edge cap for geo-baseline
    #[arg(long, default_value_t = chunkpart::ordering::BASELINE_EDGE_CAP)]
    pub baseline_cap: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Cep,
    Hash1d,
    Hash2d,
    Dbh,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum AssignmentFormat {
    Csv,
    Binary,
}

#[derive(Args)]
pub struct PartitionArgs {
    /// Ordered edge list (any method) or graph (hash methods)
    pub input: PathBuf,
    #[arg(long)]
    pub k: u64,
    #[arg(long, value_enum, default_value = "cep")]
    pub method: Method,
    /// Salt for hash1d
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the per-edge assignment here
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub assignment_format: AssignmentFormat,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args)]
pub struct EvaluateArgs {
    /// Ordered edge list, or a graph when --assignment is given
    pub input: PathBuf,
    /// Per-edge assignment (CSV or binary) to evaluate instead of chunks
    #[arg(long)]
    pub assignment: Option<PathBuf>,
    /// Comma-separated partition counts
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32,64,128")]
    pub k_list: Vec<u64>,
    /// Range of k for the ordering objective
    #[arg(long, default_value_t = 4)]
    pub kmin: u64,
    #[arg(long, default_value_t = 128)]
    pub kmax: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args)]
pub struct ScaleArgs {
    /// Ordered edge list
    pub input: PathBuf,
    /// Comma-separated partition counts, e.g. 26,27,28
    #[arg(long, value_delimiter = ',', conflicts_with = "schedule_file", required_unless_present = "schedule_file")]
    pub schedule: Vec<u64>,
    /// File with one partition count per line
    #[arg(long)]
    pub schedule_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args)]
pub struct BoundArgs {
    /// Power-law exponents, comma-separated
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<f64>,
    #[arg(long, requires_all = ["edges", "k"])]
    pub vertices: Option<u64>,
    #[arg(long, requires_all = ["vertices", "k"])]
    pub edges: Option<u64>,
    #[arg(long, requires_all = ["vertices", "edges"])]
    pub k: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CHUNKPART_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| commands::usage(format!("CHUNKPART_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Order(a) => commands::order(a),
        Command::Partition(a) => commands::partition(a),
        Command::Evaluate(a) => commands::evaluate(a),
        Command::Scale(a) => commands::scale(a),
        Command::Bound(a) => commands::bound(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

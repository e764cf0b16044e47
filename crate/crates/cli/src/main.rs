use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phsimplify::Method;

mod diff;
mod input;
mod persist;
mod reduce;

/// Shrink filtered cell complexes before computing persistent homology.
#[derive(Parser, Debug)]
#[command(name = "phsimplify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply reductions and report how much of the complex is left.
    Reduce(ReduceArgs),
    /// Compute the persistence diagram of a complex.
    Persist(PersistArgs),
    /// Compare two diagram files.
    Diff(DiffArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Pick by the first keyword of the file.
    Auto,
    Voxel,
    Simplicial,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExtensionArg {
    /// Voxel values on top cells, lower cells take the minimum.
    LowerStar,
    /// Voxel values on grid vertices, higher cells take the maximum.
    VertexMax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Acyclic,
    Collapse,
    Coreduce,
    /// acyclic, then collapse, then coreduce
    All,
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Input files; with several, output paths name directories.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
    /// Filtration extension for voxel input.
    #[arg(long, value_enum, default_value_t = ExtensionArg::LowerStar)]
    extension: ExtensionArg,
    /// Worker threads for independent inputs.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Reduction to apply; repeat to chain them in order.
    #[arg(long = "method", value_enum, required = true)]
    methods: Vec<MethodArg>,
    /// Allow filtration values to move by less than this amount.
    #[arg(long)]
    epsilon: Option<u32>,
    /// Reduced complex.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Removal log, one event per line.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Diagram of the reduced complex, with dimension zero taken from the
    /// original when the methods lose it.
    #[arg(long)]
    diagram: Option<PathBuf>,
}

impl ReduceArgs {
    fn method_list(&self) -> Vec<Method> {
        self.methods
            .iter()
            .flat_map(|m| match m {
                MethodArg::Acyclic => vec![Method::Acyclic],
                MethodArg::Collapse => vec![Method::Collapse],
                MethodArg::Coreduce => vec![Method::Coreduce],
                MethodArg::All => Method::ALL.to_vec(),
            })
            .collect()
    }
}

#[derive(Args, Debug)]
struct PersistArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Diagram file (or directory, with several inputs); stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compute dimension zero only, by union-find.
    #[arg(long)]
    dim0_unionfind: bool,
    /// Use the clearing optimisation in the matrix reduction.
    #[arg(long)]
    clearing: bool,
}

#[derive(Args, Debug)]
struct DiffArgs {
    left: PathBuf,
    right: PathBuf,
    /// Print bottleneck distances per dimension instead of testing equality.
    #[arg(long)]
    bottleneck: bool,
    /// With --bottleneck, fail if any distance exceeds this.
    #[arg(long, requires = "bottleneck")]
    epsilon: Option<f64>,
    /// Only compare these dimensions.
    #[arg(long = "dim")]
    dims: Vec<usize>,
    /// Only compare dimensions at or above this one.
    #[arg(long)]
    min_dim: Option<usize>,
}

impl DiffArgs {
    fn keeps(&self, d: usize) -> bool {
        (self.dims.is_empty() || self.dims.contains(&d)) && self.min_dim.is_none_or(|m| d >= m)
    }
}

/// An error together with the exit status it maps to. Usage errors (exit 2)
/// are reported by the argument parser itself.
#[derive(Debug)]
pub(crate) struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    pub(crate) fn data(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 3,
            error: error.into(),
        }
    }
}

pub(crate) const UNEQUAL: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Reduce(args) => reduce::run(&args),
        Command::Persist(args) => persist::run(&args),
        Command::Diff(args) => diff::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

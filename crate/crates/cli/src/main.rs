mod commands;
mod experiment;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use rigidity_core::connectivity::{ConnectivityError, SeparatorMode, DEFAULT_SEARCH_CAP};
use rigidity_core::extensions::ExtensionError;
use rigidity_core::graphs::{AnyGraph, GraphError};
use rigidity_core::linalg::DEFAULT_PRIME;
use rigidity_core::matroids::{MatroidError, MatroidKind, RankQueryConfig};
use rigidity_core::seeds::SeedError;

use output::{Format, Outcome};

#[derive(Debug, Parser)]
#[command(name = "rigidity", version, about = "Generic rank, seeds and connectivity certificates for graph matroids")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct GlobalArgs {
    /// Dimension d of the matroid.
    #[arg(short = 'd', long = "dim", global = true, default_value_t = 2)]
    dim: usize,
    /// Use the (a,b)-birigidity matroid.
    #[arg(long, num_args = 2, value_names = ["A", "B"], global = true)]
    ab: Option<Vec<usize>>,
    /// Matroid family; inferred from the graph when omitted.
    #[arg(long, value_enum, global = true)]
    kind: Option<KindArg>,
    /// Random evaluation points per rank query.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// Prime modulus of the evaluation field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Symmetric completion S_d.
    Sym,
    /// Hyperconnectivity H_d.
    Hyper,
    /// Birigidity B_d.
    Bi,
    /// (a,b)-birigidity, with --ab.
    Ab,
    /// Generic rigidity R_d.
    Rigidity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Bipartite,
    General,
}

impl From<ModeArg> for SeparatorMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Bipartite => SeparatorMode::Bipartite,
            ModeArg::General => SeparatorMode::General,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    /// Chain from --levels, or a greedy cover set followed by V.
    Chain,
    /// Randomly sampled cover set followed by V.
    Sample,
    /// Cover-based construction for bipartite graphs (needs -k).
    Biconnected,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generic rank, closed-form rank and rigidity of each graph.
    Rank {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
    /// Independence, rigidity and closedness of each graph.
    Check {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
    /// The graph plus every linked pair.
    Closure { graph: PathBuf },
    /// Build and certify a seed.
    Seed {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Chain)]
        strategy: Strategy,
        /// Chain levels as `0 1 2; 0 1 2 3 4`; the last level must be V.
        #[arg(long)]
        levels: Option<String>,
        /// Sampling probability for the sample strategy.
        #[arg(long, default_value_t = 0.5)]
        probability: f64,
        #[arg(short, long)]
        k: Option<usize>,
    },
    /// Vertex connectivity, k-(bi)connectivity, criticality and vertex cover.
    Connectivity {
        graph: PathBuf,
        #[arg(short, long)]
        k: usize,
        /// Also run the vertex-cover bound argument in this mode.
        #[arg(long, value_enum)]
        tau_report: Option<ModeArg>,
        /// Largest number of candidate sets an exhaustive search may examine.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u128,
    },
    /// Sparse certificate preserving local connectivity up to k.
    Certify {
        graph: PathBuf,
        #[arg(short, long)]
        k: usize,
    },
    /// Generate a graph from a named family.
    Family {
        #[arg(value_enum)]
        name: experiment::FamilyName,
        params: Vec<f64>,
    },
    /// Run a sweep and write a report.
    Experiment(experiment::ExperimentArgs),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Seed(SeedError::BoundViolated { .. } | SeedError::RankAnomaly(_))
            | CliError::Connectivity(ConnectivityError::Violation(_) | ConnectivityError::Anomaly(_)) => 2,
            _ => 3,
        }
    }
}

impl GlobalArgs {
    fn config(&self) -> Result<RankQueryConfig, CliError> {
        Ok(RankQueryConfig::new(self.trials, self.prime, self.seed)?)
    }

    fn ab_pair(&self) -> Option<(usize, usize)> {
        self.ab.as_ref().map(|v| (v[0], v[1]))
    }

    /// `--kind` if given; otherwise `--ab`, then the graph decides: B_d for
    /// bipartite files, S_d when there are loops, H_d otherwise.
    fn kind_for(&self, graph: &AnyGraph) -> Result<MatroidKind, CliError> {
        let d = self.dim;
        let kind = match (self.kind, self.ab_pair()) {
            (Some(KindArg::Ab), None) => return Err(CliError::Usage("--kind ab needs --ab A B".into())),
            (Some(KindArg::Ab), Some((a, b))) | (None, Some((a, b))) => MatroidKind::BirigidityAB(a, b),
            (Some(KindArg::Sym), _) => MatroidKind::SymCompletion(d),
            (Some(KindArg::Hyper), _) => MatroidKind::Hyperconnectivity(d),
            (Some(KindArg::Bi), _) => MatroidKind::Birigidity(d),
            (Some(KindArg::Rigidity), _) => MatroidKind::Rigidity(d),
            (None, None) => match graph {
                AnyGraph::Bipartite(_) => MatroidKind::Birigidity(d),
                AnyGraph::Semisimple(g) if !g.is_loopless() => MatroidKind::SymCompletion(d),
                AnyGraph::Semisimple(_) => MatroidKind::Hyperconnectivity(d),
            },
        };
        Ok(kind)
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Rank { graphs } => commands::rank(g, graphs),
        Command::Check { graphs } => commands::check(g, graphs),
        Command::Closure { graph } => commands::closure(g, graph),
        Command::Seed {
            graph,
            strategy,
            levels,
            probability,
            k,
        } => commands::seed(g, graph, *strategy, levels.as_deref(), *probability, *k),
        Command::Connectivity {
            graph,
            k,
            tau_report,
            cap,
        } => commands::connectivity(graph, *k, tau_report.map(Into::into), *cap),
        Command::Certify { graph, k } => commands::certify(graph, *k),
        Command::Family { name, params } => experiment::family(g, *name, params),
        Command::Experiment(args) => experiment::run(g, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|outcome| outcome.emit(cli.global.format, cli.global.out.as_deref())) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

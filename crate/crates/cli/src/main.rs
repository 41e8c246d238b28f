use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use framescale_cli::commands::{self, GraphFormat, Options, Target};
use framescale_cli::report::render;
use framescale_cli::CliError;

/// Scalability analysis of finite frames.
#[derive(Parser)]
#[command(name = "framescale", version)]
struct Cli {
    /// Entries with |x| at or below this count as zero.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_zero: f64,
    /// Solver feasibility and Parseval tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Rational (and single-radicand) arithmetic throughout.
    #[arg(long, global = true)]
    exact: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    enable_experimental_filters: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TargetArgs {
    /// Frame file, graph file, corpus name or generator such as `onb(3)`.
    input: Option<String>,
    /// Abstract graph: a file or a family name (K5, K_{1,3}, C7, P4, E3).
    #[arg(long, conflicts_with = "input")]
    graph: Option<String>,
    /// Ambient dimension for graph-only input.
    #[arg(long)]
    dim: Option<usize>,
}

impl TargetArgs {
    fn target(&self) -> Result<Target, CliError> {
        match (&self.graph, &self.input) {
            (Some(g), _) => Ok(Target::Graph { graph: g.clone(), dim: self.dim }),
            (None, Some(i)) => Ok(Target::Input { input: i.clone(), dim: self.dim }),
            (None, None) => Err(CliError::Input("missing input (a path, corpus name or --graph)".into())),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Graph, filters and both oracles, combined into one report.
    Analyze {
        #[command(flatten)]
        target: TargetArgs,
        /// Skip the oracles.
        #[arg(long)]
        filters_only: bool,
        /// Analyze every .json/.csv file in a directory.
        #[arg(long, conflicts_with_all = ["input", "graph"])]
        batch: Option<PathBuf>,
    },
    /// The filter battery only.
    Filters {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Scaling weights or an infeasibility certificate.
    Scale { input: String },
    /// Naimark complement of a Parseval frame, as a frame file.
    Complement {
        input: String,
        /// Rescale a tight frame to Parseval first.
        #[arg(long)]
        normalize: bool,
    },
    /// The frame graph as DOT or JSON.
    Graph {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut opts = Options {
        tol_zero: cli.tol_zero,
        tol: cli.tol,
        exact: cli.exact,
        seed: cli.seed,
        filters_only: false,
        experimental: cli.enable_experimental_filters,
    };
    match cli.command {
        Command::Analyze { target, filters_only, batch } => {
            opts.filters_only = filters_only;
            match batch {
                Some(dir) => commands::cmd_batch(&dir, target.dim, &opts).map(|v| render(&v)),
                None => commands::cmd_analyze(&target.target()?, &opts).map(|v| render(&v)),
            }
        }
        Command::Filters { target } => commands::cmd_filters(&target.target()?, &opts).map(|v| render(&v)),
        Command::Scale { input } => commands::cmd_scale(&input, &opts).map(|v| render(&v)),
        Command::Complement { input, normalize } => {
            commands::cmd_complement(&input, normalize, &opts).map(|v| render(&v))
        }
        Command::Graph { input, format } => {
            let f = match format {
                Format::Dot => GraphFormat::Dot,
                Format::Json => GraphFormat::Json,
            };
            commands::cmd_graph(&input, f, &opts)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lattice_games::io::{read_game, solution_from_json};
use lattice_games::solutions::Solver;
use lattice_games::{LatticeGame, Limits};
use lattice_games_cli::commands::{self, Format, NetshareOptions, SolveOptions, Split};
use lattice_games_cli::trace::{parse_graph, parse_weights, TrafficTrace};
use lattice_games_cli::worked;
use lattice_games_cli::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "lattice-games", version, about = "Exact solutions for games on subset, partition and embedded-subset lattices")]
struct Cli {
    /// Largest ground set for which lattices are built (E^N counts n+1).
    #[arg(long, global = true, env = "LATTICE_GAMES_MAX_N", default_value_t = 8)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute shares per atom.
    Solve {
        game: PathBuf,
        #[arg(long, default_value = "su")]
        solver: String,
        /// `equal` or a JSON file of per-edge weights.
        #[arg(long)]
        split: Option<String>,
        /// Communication graph for myerson, e.g. `1-2,2-3`.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        no_bottom_normalize: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Add an approximate decimal column to CSV output.
        #[arg(long)]
        decimal: bool,
    },
    /// Decide core non-emptiness and report diagnostics.
    Core {
        game: PathBuf,
        /// Shares to test for membership (`{"shares": {...}}`).
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long)]
        no_bottom_normalize: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        decimal: bool,
    },
    /// Share per-period traffic surplus across edges and nodes.
    Netshare {
        trace: PathBuf,
        #[arg(long, default_value = "su")]
        solver: String,
        #[arg(long, default_value = "equal")]
        split: String,
        /// Clustering per period: a partition string or {period: partition}.
        #[arg(long)]
        cluster_file: Option<PathBuf>,
        /// Number of nodes, if the trace does not say.
        #[arg(long)]
        players: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        decimal: bool,
    },
    /// Replay the worked examples; exits 1 on any mismatch.
    #[command(visible_alias = "paper-examples")]
    WorkedExamples {
        #[arg(long, value_enum, default_value = "text")]
        format: CheckFormat,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn load_game(path: &Path, limits: &Limits) -> CliResult<LatticeGame> {
    read_game(&read(path)?, limits).map_err(|e| match CliError::from(e) {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn solver(name: &str) -> CliResult<Solver> {
    Ok(name.parse()?)
}

fn split(spec: &str) -> CliResult<Split> {
    if spec == "equal" {
        Ok(Split::Equal)
    } else {
        Ok(Split::Weights(parse_weights(&read(Path::new(spec))?)?))
    }
}

fn format(f: OutputFormat) -> Format {
    match f {
        OutputFormat::Json => Format::Json,
        OutputFormat::Csv => Format::Csv,
    }
}

fn run(cli: Cli) -> CliResult<String> {
    let limits = Limits::with_max_n(cli.max_n);
    match cli.command {
        Command::Solve { game, solver: name, split: spec, graph, no_bottom_normalize, format: fmt, decimal } => {
            let f = load_game(&game, &limits)?;
            let opts = SolveOptions {
                solver: solver(&name)?,
                normalize: !no_bottom_normalize,
                split: spec.as_deref().map(split).transpose()?,
                graph: graph.as_deref().map(parse_graph).transpose()?,
            };
            commands::solve(&f, &opts)?.render(format(fmt), decimal)
        }
        Command::Core { game, check, no_bottom_normalize, format: fmt, decimal } => {
            let f = load_game(&game, &limits)?;
            let candidate = match check {
                Some(path) => {
                    let doc: serde_json::Value = serde_json::from_str(&read(&path)?)?;
                    Some(solution_from_json(&doc, f.lattice())?)
                }
                None => None,
            };
            commands::core(&f, !no_bottom_normalize, candidate.as_ref())?.render(format(fmt), decimal)
        }
        Command::Netshare { trace, solver: name, split: spec, cluster_file, players, format: fmt, decimal } => {
            let mut t = TrafficTrace::load(&trace, players)?;
            if let Some(path) = cluster_file {
                t.apply_cluster_file(&read(&path)?)?;
            }
            let opts = NetshareOptions { solver: solver(&name)?, split: split(&spec)? };
            commands::netshare(&t, &opts, &limits)?.render(format(fmt), decimal)
        }
        Command::WorkedExamples { format: fmt, corrupt } => {
            let outcomes = worked::run(&worked::Options { limits, corrupt });
            let text = match fmt {
                CheckFormat::Text => worked::render_text(&outcomes),
                CheckFormat::Json => format!("{}\n", serde_json::to_string_pretty(&worked::render_json(&outcomes))?),
            };
            if worked::all_passed(&outcomes) {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Mismatch("worked examples did not reproduce".into()))
            }
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

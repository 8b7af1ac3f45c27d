//! Argument parsing for the `distbc` binary.
//!
//! Exit codes: 0 success, 1 bound or oracle failure, 2 input error,
//! 3 non-convergence. Failures print `{"error": {...}}` on stderr.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::{
    cmd_gen, cmd_oracle, cmd_run, cmd_trace, read_graph_file, write_file, Arithmetic, CliError,
    ExperimentConfig, GraphSource, Order, Sweep,
};
use crate::protocol::Mode;

#[derive(Debug, Parser)]
#[command(name = "distbc", version, about = "Distance-vector betweenness centrality experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate, compare against the oracle and write CSV/JSON artifacts.
    Run {
        /// TOML config; the flags below override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Edge-list file.
        #[arg(long, conflicts_with = "gen")]
        graph: Option<PathBuf>,
        /// Generator spec, e.g. `grid:10x10` or `er:200:0.05`.
        #[arg(long)]
        gen: Option<String>,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long)]
        arithmetic: Option<Arithmetic>,
        /// Shuffle each node's inbox every phase (seeded).
        #[arg(long)]
        shuffle: bool,
        #[arg(long)]
        max_phases: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sweep over seeds `0..N`.
        #[arg(long)]
        sweep: Option<u64>,
    },
    /// Write the edge list of a generated graph.
    Gen {
        spec: String,
        #[arg(long, default_value = "unit")]
        weights: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact centralities as CSV: node_id,degree,ecc_hop,bc_raw,bc,f_v.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value = "rational")]
        arithmetic: Arithmetic,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-phase node states as JSON lines.
    Trace {
        graph: PathBuf,
        #[arg(long, default_value = "fast")]
        mode: Mode,
        #[arg(long, default_value = "float")]
        arithmetic: Arithmetic,
        /// Last phase to print; by default until the states stop changing.
        #[arg(long)]
        phases: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(&path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Run { config, graph, gen, weights, seed, mode, arithmetic, shuffle, max_phases, out, sweep } => {
            let mut cfg = match &config {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|source| CliError::Io { path: path.clone(), source })?;
                    ExperimentConfig::from_toml(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
                }
                None => {
                    let source = match (&graph, &gen) {
                        (Some(p), _) => GraphSource::file(p),
                        (_, Some(g)) => GraphSource::generator(g, "unit"),
                        _ => return Err(CliError::Input("run needs --config, --graph or --gen".into())),
                    };
                    ExperimentConfig::new(source)
                }
            };
            if let Some(p) = graph {
                cfg.graph = GraphSource { weights: cfg.graph.weights, ..GraphSource::file(p) };
            }
            if let Some(g) = gen {
                cfg.graph = GraphSource::generator(&g, &cfg.graph.weights);
            }
            if let Some(w) = weights {
                cfg.graph.weights = w;
            }
            cfg.seed = seed.or(cfg.seed);
            cfg.mode = mode.unwrap_or(cfg.mode);
            cfg.arithmetic = arithmetic.unwrap_or(cfg.arithmetic);
            if shuffle {
                cfg.order = Order::Shuffle;
            }
            cfg.max_phases = max_phases.or(cfg.max_phases);
            if let Some(dir) = out {
                cfg.output.dir = dir;
            }
            if let Some(count) = sweep {
                cfg.sweep = Some(Sweep { seeds: Vec::new(), count: Some(count) });
            }
            let report = cmd_run(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(report.exit_code)
        }
        Command::Gen { spec, weights, seed, out } => {
            emit(out, &cmd_gen(&spec, &weights, seed)?)?;
            Ok(0)
        }
        Command::Oracle { graph, arithmetic, out } => {
            let g = read_graph_file(&graph)?;
            emit(out, &cmd_oracle(&g, arithmetic)?)?;
            Ok(0)
        }
        Command::Trace { graph, mode, arithmetic, phases, out } => {
            let g = read_graph_file(&graph)?;
            emit(out, &cmd_trace(&g, mode, arithmetic, phases)?)?;
            Ok(0)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}

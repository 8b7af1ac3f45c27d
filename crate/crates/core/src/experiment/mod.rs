//! Experiment driver behind the `distbc` binary: single runs and seeded
//! sweeps, graph generation, oracle tables and phase-by-phase traces.
//!
//! Every command is a plain function returning its artifacts, so the
//! binary, the examples and the tests share one code path.

mod config;

pub mod cli;

pub use config::{Arithmetic, ExperimentConfig, GraphSource, Order, Outputs, Sweep};

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{compute_metrics, generate, load_edge_list, write_edge_list, Family, Graph, GraphError, WeightScheme};
use crate::metrics::{self, ConvergenceRecord};
use crate::numeric::{Exact, Float, Numeric, WideFloat};
use crate::oracle::{brandes, optimal_frequency, OracleError};
use crate::protocol::{Mode, ProtocolError};
use crate::seed;
use crate::simulator::{run, Schedule, SimError, Simulator};
use crate::weight::DEFAULT_PRECISION;

/// Relative tolerance for comparing floating-point `C` against the oracle.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("no quiescence within {0} phases")]
    NoQuiescence(usize),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Protocol(p) => CliError::Protocol(p),
            SimError::NoQuiescence(cap) => CliError::NoQuiescence(cap),
            SimError::ZeroPhases => CliError::Input(e.to_string()),
        }
    }
}

impl CliError {
    /// 2 for bad input (including counts too large for the arithmetic),
    /// 3 for non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NoQuiescence(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Graph(_) => "graph",
            CliError::Oracle(_) => "oracle",
            CliError::Protocol(_) => "protocol",
            CliError::NoQuiescence(_) => "non_convergence",
            CliError::Io { .. } => "io",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() } })
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    fs::write(path, contents).map_err(io_err(path))
}

/// Loads an edge-list file, taking the precision from a
/// `# ... precision=k` header when present.
pub fn read_graph_file(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let precision = text
        .lines()
        .take_while(|l| l.trim_start().starts_with('#') || l.trim().is_empty())
        .flat_map(|l| l.split_whitespace())
        .find_map(|tok| tok.strip_prefix("precision=").and_then(|p| p.parse().ok()))
        .unwrap_or(DEFAULT_PRECISION);
    Ok(load_edge_list(&text, precision)?)
}

/// Parses a generator spec and weight scheme, applying the master seed if
/// one is given.
pub fn resolve_generator(spec: &str, weights: &str, master: Option<u64>) -> Result<(Family, WeightScheme), CliError> {
    let mut family: Family = spec.parse()?;
    let mut scheme: WeightScheme = weights.parse()?;
    if let Some(s) = master {
        family = family.with_seed(seed::derive(s, seed::TOPOLOGY, 0));
        scheme = scheme.with_seed(seed::derive(s, seed::WEIGHTS, 0));
    }
    Ok((family, scheme))
}

pub fn resolve_graph(source: &GraphSource, master: Option<u64>) -> Result<Graph, CliError> {
    match (&source.file, &source.generator) {
        (Some(path), None) => read_graph_file(path),
        (None, Some(spec)) => {
            let (f, w) = resolve_generator(spec, &source.weights, master)?;
            Ok(generate(&f, &w)?)
        }
        _ => Err(CliError::Input("graph needs exactly one of `file` and `generator`".into())),
    }
}

/// Edge list of a generated graph.
pub fn cmd_gen(spec: &str, weights: &str, master: Option<u64>) -> Result<String, CliError> {
    let (f, w) = resolve_generator(spec, weights, master)?;
    Ok(write_edge_list(&generate(&f, &w)?))
}

fn fmt_f64(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x}")
    }
}

/// `node_id,degree,ecc_hop,bc_raw,bc,f_v`
pub fn cmd_oracle(graph: &Graph, arithmetic: Arithmetic) -> Result<String, CliError> {
    let (bc_raw, bc) = match arithmetic {
        Arithmetic::Float => oracle_values::<Float>(graph)?,
        Arithmetic::Wide => oracle_values::<WideFloat>(graph)?,
        Arithmetic::Rational => oracle_values::<Exact>(graph)?,
    };
    let m = compute_metrics(graph);
    let mut out = String::from("node_id,degree,ecc_hop,bc_raw,bc,f_v\n");
    for v in 0..graph.node_count() {
        let deg = graph.degree(v);
        writeln!(
            out,
            "{v},{deg},{},{},{},{}",
            m.ecc_hop[v],
            fmt_f64(bc_raw[v]),
            fmt_f64(bc[v]),
            fmt_f64(optimal_frequency(deg, bc[v]))
        )
        .unwrap();
    }
    Ok(out)
}

fn oracle_values<A: Numeric>(graph: &Graph) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let e = brandes::<A>(graph)?;
    Ok((e.bc_raw_f64(), e.bc_f64()))
}

/// JSON lines, one per `(phase, node)`, from phase 0 through `phases` (or
/// until a phase passes with no change). Undetermined contributions render
/// as `"∞"`.
pub fn cmd_trace(graph: &Graph, mode: Mode, arithmetic: Arithmetic, phases: Option<usize>) -> Result<String, CliError> {
    match arithmetic {
        Arithmetic::Float => trace::<Float>(graph, mode, phases),
        Arithmetic::Wide => trace::<WideFloat>(graph, mode, phases),
        Arithmetic::Rational => trace::<Exact>(graph, mode, phases),
    }
}

fn trace<A: Numeric>(graph: &Graph, mode: Mode, phases: Option<usize>) -> Result<String, CliError> {
    let mut sim = Simulator::<A>::new(graph, mode, crate::simulator::DeliveryOrder::Canonical)?;
    let cap = Schedule::canonical().phase_cap(graph.node_count());
    let mut out = String::new();
    let emit = |out: &mut String, phase: usize, sim: &Simulator<A>| {
        for (v, s) in sim.states().iter().enumerate() {
            let mut line = json!({ "phase": phase, "node": v });
            let state = s.to_debug_json(graph.precision(), true);
            line.as_object_mut().unwrap().extend(state.as_object().unwrap().clone());
            out.push_str(&line.to_string());
            out.push('\n');
        }
    };
    emit(&mut out, 0, &sim);
    loop {
        let limit = phases.unwrap_or(cap);
        if sim.phase() >= limit {
            if phases.is_none() {
                return Err(CliError::NoQuiescence(cap));
            }
            break;
        }
        let changes = sim.step()?;
        emit(&mut out, sim.phase(), &sim);
        if phases.is_none() && changes.iter().all(|c| !c.any()) {
            break;
        }
    }
    Ok(out)
}

/// Outcome of one run, as written to `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub graph: String,
    pub seed: Option<u64>,
    pub nodes: usize,
    pub edges: usize,
    pub mode: Mode,
    pub arithmetic: Arithmetic,
    pub order: Order,
    pub quiescence_phase: usize,
    pub c_quiescence_phase: usize,
    pub settled_phase: usize,
    pub phases_executed: usize,
    pub diam: usize,
    pub max_diam: usize,
    /// `2 · Diam + 1`.
    pub bound: usize,
    pub bound_ok: bool,
    /// Whether every final `C` matches the oracle; `None` in Bellman-Ford mode
    /// or when the oracle is undefined (fewer than 3 nodes).
    pub oracle_ok: Option<bool>,
    pub max_relative_error: Option<f64>,
    pub messages: u64,
    pub ops: u64,
    pub ops_per_message: f64,
    pub mean_ecc: Option<f64>,
    pub mean_ecc_top10: Option<f64>,
}

impl RunSummary {
    pub fn passed(&self) -> bool {
        self.bound_ok && self.oracle_ok != Some(false)
    }
}

/// Summaries of every run of a config, plus the process exit code:
/// 0 if all passed, 1 if any bound or oracle check failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub runs: Vec<RunSummary>,
    pub exit_code: i32,
}

/// Runs a config and writes its artifacts under `config.output.dir`.
///
/// A single run writes `errors.csv`, `nodes.csv`, `histogram.csv` and
/// `summary.json`. A sweep writes the same into `seed-<s>/` for every seed,
/// plus `sweep.json` and the seed-averaged `mean_error.csv`.
pub fn cmd_run(config: &ExperimentConfig) -> Result<RunReport, CliError> {
    let dir = &config.output.dir;
    let mut runs = Vec::new();
    match &config.sweep {
        None => {
            let (summary, record) = run_config(config, config.seed)?;
            write_artifacts(config, dir, &summary, record.as_ref())?;
            runs.push(summary);
        }
        Some(sweep) => {
            let seeds = sweep.seeds();
            if seeds.is_empty() {
                return Err(CliError::Input("sweep has no seeds".into()));
            }
            let mut curves = Vec::new();
            for s in seeds {
                let (summary, record) = run_config(config, Some(s))?;
                write_artifacts(config, &dir.join(format!("seed-{s}")), &summary, record.as_ref())?;
                if let Some(e) = record.and_then(|r| r.global_error) {
                    curves.push(e);
                }
                runs.push(summary);
            }
            write_file(&dir.join("mean_error.csv"), &mean_curve_csv(&curves))?;
            write_file(&dir.join("sweep.json"), &serde_json::to_string_pretty(&runs).unwrap())?;
        }
    }
    let exit_code = if runs.iter().all(RunSummary::passed) { 0 } else { 1 };
    Ok(RunReport { runs, exit_code })
}

/// Phase-wise mean of error curves; a finished curve holds its last value.
pub fn mean_curve(curves: &[Vec<f64>]) -> Vec<f64> {
    let len = curves.iter().map(Vec::len).max().unwrap_or(0);
    (0..len)
        .map(|p| {
            let total: f64 = curves.iter().map(|c| c.get(p).or(c.last()).copied().unwrap_or(0.0)).sum();
            total / curves.len() as f64
        })
        .collect()
}

fn mean_curve_csv(curves: &[Vec<f64>]) -> String {
    let mut out = String::from("phase,global_error\n");
    for (p, x) in mean_curve(curves).iter().enumerate() {
        writeln!(out, "{p},{x}").unwrap();
    }
    out
}

fn write_artifacts(
    config: &ExperimentConfig,
    dir: &Path,
    summary: &RunSummary,
    record: Option<&ConvergenceRecord>,
) -> Result<(), CliError> {
    if let Some(r) = record {
        if config.output.error_csv {
            write_file(&dir.join("errors.csv"), &metrics::error_csv(r))?;
        }
        if config.output.nodes_csv {
            write_file(&dir.join("nodes.csv"), &metrics::nodes_csv(r))?;
        }
        if config.output.histogram_csv {
            write_file(&dir.join("histogram.csv"), &metrics::histogram_csv(&metrics::convergence_histogram(r)))?;
        }
    }
    write_file(&dir.join("summary.json"), &serde_json::to_string_pretty(summary).unwrap())
}

/// One run of `config` with the given master seed, without writing files.
pub fn run_config(
    config: &ExperimentConfig,
    master: Option<u64>,
) -> Result<(RunSummary, Option<ConvergenceRecord>), CliError> {
    let graph = resolve_graph(&config.graph, master)?;
    let label = match (&config.graph.file, &config.graph.generator) {
        (Some(p), _) => p.display().to_string(),
        (_, Some(g)) => format!("{g} weights={}", config.graph.weights),
        _ => String::new(),
    };
    match config.arithmetic {
        Arithmetic::Float => run_graph::<Float>(&graph, config, master, label),
        Arithmetic::Wide => run_graph::<WideFloat>(&graph, config, master, label),
        Arithmetic::Rational => run_graph::<Exact>(&graph, config, master, label),
    }
}

fn run_graph<A: Numeric>(
    graph: &Graph,
    config: &ExperimentConfig,
    master: Option<u64>,
    label: String,
) -> Result<(RunSummary, Option<ConvergenceRecord>), CliError> {
    let mut schedule = match config.order {
        Order::Canonical => Schedule::canonical(),
        Order::Shuffle => Schedule::shuffled(seed::derive(master.unwrap_or(0), seed::SHUFFLE, 0)),
    };
    schedule.max_phases = config.max_phases;
    let m = compute_metrics(graph);
    let sim = run::<A>(graph, config.mode, &schedule, &mut [])?;
    let (messages, ops) = sim.work();
    let bound = 2 * m.max_diam + 1;

    let mut summary = RunSummary {
        graph: label,
        seed: master,
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        mode: config.mode,
        arithmetic: config.arithmetic,
        order: config.order,
        quiescence_phase: sim.quiescence_phase,
        c_quiescence_phase: sim.c_quiescence_phase,
        settled_phase: sim.settled_phase,
        phases_executed: sim.phases_executed,
        diam: m.diam,
        max_diam: m.max_diam,
        bound,
        bound_ok: sim.quiescence_phase <= bound,
        oracle_ok: None,
        max_relative_error: None,
        messages,
        ops,
        ops_per_message: if messages == 0 { 0.0 } else { ops as f64 / messages as f64 },
        mean_ecc: None,
        mean_ecc_top10: None,
    };
    if config.mode == Mode::BellmanFord || graph.node_count() < 3 {
        return Ok((summary, None));
    }

    let e = brandes::<A>(graph)?;
    let exact = sim
        .final_states
        .iter()
        .zip(&e.bc_raw)
        .all(|(s, b)| s.centrality() == b);
    let bc_raw = e.bc_raw_f64();
    let worst = sim
        .final_centrality()
        .iter()
        .zip(&bc_raw)
        .map(|(c, b)| (c - b).abs() / b.abs().max(1.0))
        .fold(0.0, f64::max);
    summary.oracle_ok = Some(if A::EXACT { exact } else { worst <= FLOAT_TOLERANCE });
    summary.max_relative_error = Some(worst);
    if summary.oracle_ok == Some(false) {
        return Ok((summary, None));
    }
    let record = ConvergenceRecord::new(&sim, &bc_raw, &e.bc_f64(), &m, FLOAT_TOLERANCE)
        .map_err(|err| CliError::Input(err.to_string()))?;
    let ecc = metrics::eccentricity_report(&record, 10);
    summary.mean_ecc = Some(ecc.mean_ecc);
    summary.mean_ecc_top10 = Some(ecc.mean_ecc_top);
    Ok((summary, Some(record)))
}

//! Convergence measurements: per-phase global error, local convergence
//! times and their summaries, plus the CSV renderings.

use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphMetrics, NodeId};
use crate::numeric::Numeric;
use crate::simulator::SimulationRun;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("global error is undefined: every node has zero centrality")]
    ZeroCentrality,
    #[error("length mismatch: {0} estimates for {1} nodes")]
    LengthMismatch(usize, usize),
    #[error("node {node} ended with C = {got}, expected {expected}")]
    WrongFixedPoint { node: NodeId, got: f64, expected: f64 },
}

/// `‖bc - C‖₂ / ‖bc‖₂` on unnormalized values.
pub fn global_error(current: &[f64], bc_raw: &[f64]) -> Result<f64, MetricsError> {
    if current.len() != bc_raw.len() {
        return Err(MetricsError::LengthMismatch(current.len(), bc_raw.len()));
    }
    let norm: f64 = bc_raw.iter().map(|b| b * b).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(MetricsError::ZeroCentrality);
    }
    let diff: f64 = bc_raw
        .iter()
        .zip(current)
        .map(|(b, c)| (b - c) * (b - c))
        .sum::<f64>()
        .sqrt();
    Ok(diff / norm)
}

/// Per-node `(T_D, T_C)` of a run, after checking that every `C` ended at
/// the oracle value within `rel_tol`.
pub fn record_local_convergence<A: Numeric>(
    run: &SimulationRun<A>,
    bc_raw: &[f64],
    rel_tol: f64,
) -> Result<Vec<(usize, usize)>, MetricsError> {
    let last = run.final_centrality();
    if last.len() != bc_raw.len() {
        return Err(MetricsError::LengthMismatch(last.len(), bc_raw.len()));
    }
    for (v, (&got, &expected)) in last.iter().zip(bc_raw).enumerate() {
        if (got - expected).abs() > rel_tol * expected.abs().max(1.0) {
            return Err(MetricsError::WrongFixedPoint { node: v, got, expected });
        }
    }
    Ok(run.local_convergence())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    /// Indexed by phase, starting at phase 0. `None` when every `bc` is zero.
    pub global_error: Option<Vec<f64>>,
    pub t_d: Vec<usize>,
    pub t_c: Vec<usize>,
    /// Normalized oracle centrality.
    pub bc: Vec<f64>,
    pub bc_raw: Vec<f64>,
    pub ecc_hop: Vec<usize>,
    pub quiescence_phase: usize,
    pub c_quiescence_phase: usize,
}

impl ConvergenceRecord {
    pub fn new<A: Numeric>(
        run: &SimulationRun<A>,
        bc_raw: &[f64],
        bc: &[f64],
        metrics: &GraphMetrics,
        rel_tol: f64,
    ) -> Result<Self, MetricsError> {
        let local = record_local_convergence(run, bc_raw, rel_tol)?;
        let global_error = match run
            .centrality
            .iter()
            .map(|c| global_error(c, bc_raw))
            .collect::<Result<Vec<_>, _>>()
        {
            Ok(e) => Some(e),
            Err(MetricsError::ZeroCentrality) => None,
            Err(e) => return Err(e),
        };
        Ok(ConvergenceRecord {
            global_error,
            t_d: local.iter().map(|x| x.0).collect(),
            t_c: local.iter().map(|x| x.1).collect(),
            bc: bc.to_vec(),
            bc_raw: bc_raw.to_vec(),
            ecc_hop: metrics.ecc_hop.clone(),
            quiescence_phase: run.quiescence_phase,
            c_quiescence_phase: run.c_quiescence_phase,
        })
    }

    pub fn node_count(&self) -> usize {
        self.bc.len()
    }

    /// Phases at which the global error rose by more than `tol`.
    pub fn error_increases(&self, tol: f64) -> Vec<usize> {
        match &self.global_error {
            Some(e) => e
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[1] > w[0] + tol)
                .map(|(i, _)| i + 1)
                .collect(),
            None => Vec::new(),
        }
    }
}

/// How many nodes last changed `C` at each phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceHistogram {
    /// Nodes whose `C` never changed.
    pub never: usize,
    /// `(phase, count)` for every phase from 1 to the last `T_C`.
    pub counts: Vec<(usize, usize)>,
}

pub fn convergence_histogram(record: &ConvergenceRecord) -> ConvergenceHistogram {
    let last = record.t_c.iter().copied().max().unwrap_or(0);
    let mut counts: Vec<(usize, usize)> = (1..=last).map(|p| (p, 0)).collect();
    let mut never = 0;
    for &t in &record.t_c {
        if t == 0 {
            never += 1;
        } else {
            counts[t - 1].1 += 1;
        }
    }
    ConvergenceHistogram { never, counts }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EccentricityReport {
    pub mean_ecc: f64,
    pub mean_ecc_top: f64,
    /// Highest-`bc` nodes, ties broken by id.
    pub top: Vec<NodeId>,
}

pub fn eccentricity_report(record: &ConvergenceRecord, top_k: usize) -> EccentricityReport {
    let n = record.node_count();
    let mean = |nodes: &[NodeId]| {
        if nodes.is_empty() {
            return 0.0;
        }
        nodes.iter().map(|&v| record.ecc_hop[v] as f64).sum::<f64>() / nodes.len() as f64
    };
    let all: Vec<NodeId> = (0..n).collect();
    let mut ranked = all.clone();
    ranked.sort_by(|&a, &b| record.bc[b].total_cmp(&record.bc[a]).then(a.cmp(&b)));
    ranked.truncate(top_k.min(n));
    EccentricityReport {
        mean_ecc: mean(&all),
        mean_ecc_top: mean(&ranked),
        top: ranked,
    }
}

/// `phase,global_error`
pub fn error_csv(record: &ConvergenceRecord) -> String {
    let mut out = String::from("phase,global_error\n");
    if let Some(e) = &record.global_error {
        for (p, x) in e.iter().enumerate() {
            writeln!(out, "{p},{x}").unwrap();
        }
    }
    out
}

/// `node,bc,ecc,T_D,T_C`
pub fn nodes_csv(record: &ConvergenceRecord) -> String {
    let mut out = String::from("node,bc,ecc,T_D,T_C\n");
    for v in 0..record.node_count() {
        writeln!(
            out,
            "{v},{},{},{},{}",
            record.bc[v], record.ecc_hop[v], record.t_d[v], record.t_c[v]
        )
        .unwrap();
    }
    out
}

/// `phase,count`, with the never-changed nodes on phase 0.
pub fn histogram_csv(h: &ConvergenceHistogram) -> String {
    let mut out = String::from("phase,count\n");
    writeln!(out, "0,{}", h.never).unwrap();
    for (p, c) in &h.counts {
        writeln!(out, "{p},{c}").unwrap();
    }
    out
}

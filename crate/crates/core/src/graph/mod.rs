//! Weighted undirected graphs, their text format, generators and hop metrics.

mod generate;
mod io;
mod metrics;

pub use generate::{generate, generate_with_diameter, Family, WeightScheme, MAX_RETRIES};
pub use io::{load_edge_list, write_edge_list};
pub use metrics::{compute_metrics, GraphMetrics};
pub(crate) use metrics::dijkstra;

use std::collections::VecDeque;

use thiserror::Error;

use crate::weight::{Weight, WeightError, DEFAULT_PRECISION, MAX_PRECISION};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: bad weight: {source}")]
    BadWeight { line: usize, source: WeightError },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge {0}-{1} has non-positive weight")]
    NonPositiveWeight(NodeId, NodeId),
    #[error("graph is empty")]
    Empty,
    #[error("graph is disconnected: node {0} is unreachable from node 0")]
    Disconnected(NodeId),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("no connected instance within {0} attempts")]
    RetriesExhausted(usize),
    #[error("precision {0} exceeds the supported maximum of {MAX_PRECISION}")]
    UnsupportedPrecision(u32),
}

/// A connected, undirected graph with strictly positive exact weights.
///
/// Nodes are `0..node_count()`. Each adjacency list is sorted by neighbor id,
/// which fixes the canonical message order used by the simulator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<(NodeId, Weight)>>,
    edge_count: usize,
    precision: u32,
}

impl Graph {
    /// Validates and builds a graph over nodes `0..node_count`.
    pub fn from_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, Weight)>,
        precision: u32,
    ) -> Result<Graph, GraphError> {
        if precision > MAX_PRECISION {
            return Err(GraphError::UnsupportedPrecision(precision));
        }
        if node_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency: Vec<Vec<(NodeId, Weight)>> = vec![Vec::new(); node_count];
        let mut edge_count = 0;
        for (u, v, w) in edges {
            if u >= node_count || v >= node_count {
                return Err(GraphError::InvalidParameters(format!(
                    "edge {u}-{v} outside node range 0..{node_count}"
                )));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if w == Weight::ZERO || !w.is_finite() {
                return Err(GraphError::NonPositiveWeight(u, v));
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable_by_key(|&(v, _)| v);
            if let Some(pair) = list.windows(2).find(|p| p[0].0 == p[1].0) {
                let v = pair[0].0;
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        let graph = Graph {
            adjacency,
            edge_count,
            precision,
        };
        if let Some(unreached) = graph.first_unreachable() {
            return Err(GraphError::Disconnected(unreached));
        }
        Ok(graph)
    }

    /// Unit-weight graph at the default precision.
    pub fn unweighted(
        node_count: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Graph, GraphError> {
        let unit = Weight::from_units(1, DEFAULT_PRECISION);
        Graph::from_edges(
            node_count,
            edges.into_iter().map(|(u, v)| (u, v, unit)),
            DEFAULT_PRECISION,
        )
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Fractional decimal digits of the weights (`tick = 10^-precision`).
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Neighbors of `v` with edge weights, sorted by neighbor id.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, Weight)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<Weight> {
        let list = &self.adjacency[u];
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| list[i].1)
    }

    /// Each edge once, as `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, Weight)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// True when every edge weighs exactly one unit.
    pub fn is_unit_weight(&self) -> bool {
        let unit = Weight::from_units(1, self.precision);
        self.edges().all(|(_, _, w)| w == unit)
    }

    /// True when every pair of nodes is adjacent.
    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        self.adjacency.iter().all(|list| list.len() + 1 == n)
    }

    /// The same topology with nodes renamed by `perm` (old id `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[NodeId]) -> Result<Graph, GraphError> {
        Graph::from_edges(
            self.node_count(),
            self.edges().map(|(u, v, w)| (perm[u], perm[v], w)),
            self.precision,
        )
    }

    fn first_unreachable(&self) -> Option<NodeId> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }
}

//! The per-node protocol: a distance-vector (Bellman-Ford) exchange extended
//! with next-hop / previous-hop sets, shortest-path counts and dependency
//! accumulation, so that every node ends up knowing its own betweenness
//! centrality.
//!
//! Each node keeps, for every target `t`:
//!
//! * `D[t]`: its current distance estimate,
//! * `NH[t]` / `PH[t]`: neighbors currently believed to be next hops towards
//!   `t` / previous hops away from `t`,
//! * `S[v, t]` and a copy `S[u, t]` of each neighbor's path count,
//! * `B[v, t]` and a copy `B[u, t]` of each neighbor's contribution,
//!
//! plus the running centrality `C = Σ_{t ≠ v} B[v, t]`.
//!
//! Three receive rules are provided. [`NodeState::receive_bellman_ford`]
//! updates distances only. [`NodeState::receive_reference`] recomputes the
//! sums over `NH[t]`, `PH[t]` and the whole `B` row after every message.
//! [`NodeState::receive_fast`] maintains the same quantities incrementally
//! with a constant number of operations per message.

mod state;

pub use state::{HopRole, NodeState};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::NodeId;
use crate::numeric::Numeric;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    BellmanFord,
    Reference,
    Fast,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bellman_ford" | "bellman-ford" | "bf" => Ok(Mode::BellmanFord),
            "reference" | "ref" => Ok(Mode::Reference),
            "fast" => Ok(Mode::Fast),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::BellmanFord => "bellman_ford",
            Mode::Reference => "reference",
            Mode::Fast => "fast",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("path count overflow at node {node} for target {target}")]
    CountOverflow { node: NodeId, target: NodeId },
    #[error("path count underflow at node {node} for target {target}")]
    CountUnderflow { node: NodeId, target: NodeId },
    #[error("node {node} has no neighbor {from}")]
    UnknownNeighbor { node: NodeId, from: NodeId },
    #[error("invalid initialization of node {node}: {reason}")]
    InvalidInit { node: NodeId, reason: String },
    #[error("normalized centrality needs at least 3 nodes, got {0}")]
    TooFewNodes(usize),
}

/// One distance-vector entry `(t, d, s, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Message<A: Numeric> {
    pub target: NodeId,
    pub distance: Weight,
    pub path_count: A::Count,
    pub contribution: A::Real,
}

/// What a node sends in one phase: the same messages, in ascending target
/// order, to every neighbor.
#[derive(Debug, Clone, PartialEq)]
pub struct Outbox<A: Numeric> {
    pub recipients: Vec<NodeId>,
    pub messages: Vec<Message<A>>,
}

/// Which parts of a node's state a receive touched.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Changes {
    pub distance: bool,
    pub hops: bool,
    pub paths: bool,
    /// `B[v, t]` for some `t ≠ v`.
    pub contribution: bool,
    /// `B[v, v]`, which never enters `C`.
    pub self_contribution: bool,
    pub centrality: bool,
    /// Stored copies of neighbor values (`S[u, t]`, `B[u, t]`, cached terms).
    pub neighbor_view: bool,
}

impl Changes {
    /// Any of the node's own fields: D, NH, PH, S, B (including `B[v, v]`)
    /// or C.
    pub fn own(&self) -> bool {
        self.distance
            || self.hops
            || self.paths
            || self.contribution
            || self.self_contribution
            || self.centrality
    }

    pub fn any(&self) -> bool {
        self.own() || self.neighbor_view
    }

    pub fn merge(&mut self, other: Changes) {
        self.distance |= other.distance;
        self.hops |= other.hops;
        self.paths |= other.paths;
        self.contribution |= other.contribution;
        self.self_contribution |= other.self_contribution;
        self.centrality |= other.centrality;
        self.neighbor_view |= other.neighbor_view;
    }
}

/// `C / ((n-1)(n-2))`.
pub fn normalized_centrality<A: Numeric>(
    state: &NodeState<A>,
    n: usize,
) -> Result<A::Real, ProtocolError> {
    if n < 3 {
        return Err(ProtocolError::TooFewNodes(n));
    }
    let pairs = ((n - 1) * (n - 2)) as u64;
    Ok(state.centrality().clone() / A::real_from_u64(pairs))
}

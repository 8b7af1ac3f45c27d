//! Centralized ground truth for betweenness centrality.
//!
//! [`brandes`] runs the dependency-accumulation algorithm over exact weights
//! and any [`Numeric`] back-end; [`brute_force`] enumerates every simple path
//! of a tiny graph in exact rationals; [`check_identities`] cross-checks the
//! path-count identities on a brute-force result.

mod brandes;
mod brute_force;
mod identities;

pub use brandes::brandes;
pub use brute_force::{brute_force, BRUTE_FORCE_MAX_NODES};
pub use identities::{check_identities, next_hops, prev_hops, IdentityReport};

use thiserror::Error;

use crate::graph::NodeId;
use crate::numeric::Numeric;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("betweenness needs at least 3 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("brute force is limited to {max} nodes, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("path count overflow for source {0}")]
    CountOverflow(NodeId),
    #[error("identity checks need per-node and per-arc path counts")]
    MissingDetail,
    #[error("identity violated: {0}")]
    IdentityViolation(String),
}

/// Exact path counts and centralities of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCentrality<A: Numeric> {
    n: usize,
    sigma: Vec<A::Count>,
    sigma_through: Option<Vec<A::Count>>,
    sigma_arc: Option<Vec<A::Count>>,
    contrib: Vec<A::Real>,
    /// `Σ_{s ≠ v, t ≠ v} σ_{s,t}(v) / σ_{s,t}` over ordered pairs.
    pub bc_raw: Vec<A::Real>,
    /// `bc_raw / ((n-1)(n-2))`.
    pub bc: Vec<A::Real>,
}

impl<A: Numeric> ExactCentrality<A> {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// `σ_{s,t}`, with `σ_{s,s} = 1`.
    pub fn sigma(&self, s: NodeId, t: NodeId) -> &A::Count {
        &self.sigma[s * self.n + t]
    }

    /// `σ_{s,t}(v)`, shortest `s`–`t` paths visiting `v` (endpoints included).
    pub fn sigma_through(&self, s: NodeId, t: NodeId, v: NodeId) -> Option<&A::Count> {
        let n = self.n;
        self.sigma_through.as_ref().map(|x| &x[(s * n + t) * n + v])
    }

    /// `σ_{s,t}(u, v)`, shortest `s`–`t` paths traversing the arc `u → v`.
    pub fn sigma_arc(&self, s: NodeId, t: NodeId, u: NodeId, v: NodeId) -> Option<&A::Count> {
        let n = self.n;
        self.sigma_arc.as_ref().map(|x| &x[((s * n + t) * n + u) * n + v])
    }

    /// `bc_v(s)`, the share of source `s` in `v`'s centrality. On the
    /// diagonal this is the source's own accumulated dependency, `n - 1`.
    pub fn contribution(&self, v: NodeId, s: NodeId) -> &A::Real {
        &self.contrib[v * self.n + s]
    }

    pub fn bc_raw_f64(&self) -> Vec<f64> {
        self.bc_raw.iter().map(A::real_to_f64).collect()
    }

    pub fn bc_f64(&self) -> Vec<f64> {
        self.bc.iter().map(A::real_to_f64).collect()
    }
}

/// `sqrt(deg / bc)`, the link-sensing frequency that balances a node's
/// degree against its centrality. A node with zero centrality gets
/// `f64::INFINITY`.
pub fn optimal_frequency(deg: usize, bc: f64) -> f64 {
    if bc == 0.0 {
        return f64::INFINITY;
    }
    (deg as f64 / bc).sqrt()
}

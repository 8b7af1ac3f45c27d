use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ExactCentrality, OracleError};
use crate::graph::{Graph, GraphMetrics, NodeId};
use crate::numeric::Exact;

/// How many instances of each identity were checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub fact1_node: usize,
    pub fact1_arc: usize,
    pub fact2_next: usize,
    pub fact2_prev: usize,
    /// `None` when the graph has non-unit weights.
    pub aggregate: Option<bool>,
}

/// Neighbors of `v` on some shortest `v`–`t` path.
pub fn next_hops(graph: &Graph, m: &GraphMetrics, v: NodeId, t: NodeId) -> Vec<NodeId> {
    graph
        .neighbors(v)
        .iter()
        .filter(|&&(u, w)| v != t && w + m.dist(u, t) == m.dist(v, t))
        .map(|&(u, _)| u)
        .collect()
}

/// Neighbors `u` of `v` such that `v` lies on a shortest `s`–`u` path.
pub fn prev_hops(graph: &Graph, m: &GraphMetrics, v: NodeId, s: NodeId) -> Vec<NodeId> {
    graph
        .neighbors(v)
        .iter()
        .filter(|&&(u, w)| m.dist(s, v) + w == m.dist(s, u))
        .map(|&(u, _)| u)
        .collect()
}

/// Checks the path-count identities on a brute-force result.
///
/// * Fact 1: `σ_{s,t}(v) = σ_{s,v} σ_{v,t}` whenever `v` is on a shortest
///   `s`–`t` path, and likewise `σ_{s,t}(u,v) = σ_{s,u} σ_{v,t}` for arcs.
/// * Fact 2: `σ_{v,t} = Σ_{u ∈ NH_v(t)} σ_{u,t}` for `t ≠ v`, and
///   `σ_{v,t} = Σ_{u ∈ PH_v(s)} σ_{v,t}(v,u)` when `v ≠ t` is on a shortest
///   `s`–`t` path.
/// * On unit weights, `Σ_v bc_raw(v) = Σ_{s ≠ t} (dist(s,t) - 1)`.
pub fn check_identities(
    e: &ExactCentrality<Exact>,
    graph: &Graph,
    m: &GraphMetrics,
) -> Result<IdentityReport, OracleError> {
    if e.sigma_through.is_none() || e.sigma_arc.is_none() {
        return Err(OracleError::MissingDetail);
    }
    let n = e.node_count();
    let mut report = IdentityReport::default();
    let fail = |msg: String| Err(OracleError::IdentityViolation(msg));

    for s in 0..n {
        for t in 0..n {
            for v in 0..n {
                let through = e.sigma_through(s, t, v).unwrap();
                if !through.is_zero() {
                    report.fact1_node += 1;
                    if *through != e.sigma(s, v) * e.sigma(v, t) {
                        return fail(format!("fact 1 at s={s} t={t} v={v}"));
                    }
                }
                for &(u, _) in graph.neighbors(v) {
                    let arc = e.sigma_arc(s, t, v, u).unwrap();
                    if !arc.is_zero() {
                        report.fact1_arc += 1;
                        if *arc != e.sigma(s, v) * e.sigma(u, t) {
                            return fail(format!("fact 1 on arc {v}->{u} for s={s} t={t}"));
                        }
                    }
                }
                if v != t && !through.is_zero() {
                    report.fact2_prev += 1;
                    let total = prev_hops(graph, m, v, s)
                        .into_iter()
                        .fold(BigUint::zero(), |acc, u| acc + e.sigma_arc(v, t, v, u).unwrap());
                    if total != *e.sigma(v, t) {
                        return fail(format!("fact 2 previous hops at s={s} t={t} v={v}"));
                    }
                }
            }
        }
    }

    for v in 0..n {
        for t in 0..n {
            if t == v {
                continue;
            }
            report.fact2_next += 1;
            let total = next_hops(graph, m, v, t)
                .into_iter()
                .fold(BigUint::zero(), |acc, u| acc + e.sigma(u, t));
            if total != *e.sigma(v, t) {
                return fail(format!("fact 2 next hops at v={v} t={t}"));
            }
        }
    }

    if graph.is_unit_weight() {
        let lhs = e.bc_raw.iter().fold(BigRational::zero(), |acc, b| acc + b);
        let mut rhs = 0u64;
        for s in 0..n {
            for t in 0..n {
                if s != t {
                    rhs += m.minhop(s, t) as u64 - 1;
                }
            }
        }
        let ok = lhs == BigRational::from_integer(rhs.into());
        report.aggregate = Some(ok);
        if !ok {
            return fail(format!("aggregate: Σ bc_raw = {lhs}, Σ (dist - 1) = {rhs}"));
        }
    }
    Ok(report)
}

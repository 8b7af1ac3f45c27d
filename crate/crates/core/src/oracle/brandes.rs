use num_traits::{CheckedAdd, One, Zero};

use super::{ExactCentrality, OracleError};
use crate::graph::dijkstra;
use crate::graph::Graph;
use crate::numeric::Numeric;

/// Brandes' algorithm on exact weights.
///
/// For each source `s`: a Dijkstra pass settles nodes in nondecreasing
/// distance, path counts are pushed along the shortest-path DAG in that
/// order, then dependencies are accumulated in reverse with
/// `δ_s(v) = σ_{s,v} · Σ_{u ∈ succ(v)} (δ_s(u) + 1) / σ_{s,u}`.
pub fn brandes<A: Numeric>(graph: &Graph) -> Result<ExactCentrality<A>, OracleError> {
    let n = graph.node_count();
    if n < 3 {
        return Err(OracleError::TooFewNodes(n));
    }
    let mut sigma = vec![A::Count::zero(); n * n];
    let mut contrib = vec![A::Real::zero(); n * n];
    let mut bc_raw = vec![A::Real::zero(); n];

    for s in 0..n {
        let (dist, order) = dijkstra(graph, s);
        let row = &mut sigma[s * n..(s + 1) * n];
        row[s] = A::Count::one();
        for &v in order.iter().skip(1) {
            let mut total = A::Count::zero();
            for &(u, w) in graph.neighbors(v) {
                if dist[u] + w == dist[v] {
                    total = total
                        .checked_add(&row[u])
                        .ok_or(OracleError::CountOverflow(s))?;
                }
            }
            row[v] = total;
        }

        let mut delta = vec![A::Real::zero(); n];
        for &v in order.iter().rev() {
            let mut acc = A::Real::zero();
            for &(u, w) in graph.neighbors(v) {
                if dist[v] + w == dist[u] {
                    acc = acc + (delta[u].clone() + A::Real::one()) / A::count_to_real(&row[u]);
                }
            }
            delta[v] = A::count_to_real(&row[v]) * acc;
        }
        for (v, d) in delta.into_iter().enumerate() {
            if v != s {
                bc_raw[v] = bc_raw[v].clone() + d.clone();
            }
            contrib[v * n + s] = d;
        }
    }

    let pairs = A::real_from_u64(((n - 1) * (n - 2)) as u64);
    let bc = bc_raw.iter().map(|b| b.clone() / pairs.clone()).collect();
    Ok(ExactCentrality {
        n,
        sigma,
        sigma_through: None,
        sigma_arc: None,
        contrib,
        bc_raw,
        bc,
    })
}

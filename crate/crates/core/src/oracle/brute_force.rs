use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ExactCentrality, OracleError};
use crate::graph::{Graph, NodeId};
use crate::numeric::{Exact, Numeric};
use crate::weight::Weight;

pub const BRUTE_FORCE_MAX_NODES: usize = 10;

/// Path counts and centralities by enumerating simple paths.
///
/// For every ordered pair a depth-first search lists the simple paths from
/// `s` to `t`, dropping any prefix already longer than the best complete
/// path found; the paths of minimum length are then tallied per node and
/// per arc.
pub fn brute_force(graph: &Graph) -> Result<ExactCentrality<Exact>, OracleError> {
    let n = graph.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(OracleError::TooLarge { n, max: BRUTE_FORCE_MAX_NODES });
    }
    if n < 3 {
        return Err(OracleError::TooFewNodes(n));
    }

    let mut sigma = vec![BigUint::zero(); n * n];
    let mut through = vec![BigUint::zero(); n * n * n];
    let mut arc = vec![BigUint::zero(); n * n * n * n];

    for s in 0..n {
        for t in 0..n {
            let paths = if s == t { vec![vec![s]] } else { shortest_paths(graph, s, t) };
            let st = s * n + t;
            sigma[st] = BigUint::from(paths.len());
            for path in &paths {
                for &v in path {
                    through[st * n + v] += 1u32;
                }
                for hop in path.windows(2) {
                    arc[(st * n + hop[0]) * n + hop[1]] += 1u32;
                }
            }
        }
    }

    let ratio = |s: usize, t: usize, v: usize| {
        BigRational::new(
            through[(s * n + t) * n + v].clone().into(),
            sigma[s * n + t].clone().into(),
        )
    };
    let mut contrib = vec![BigRational::zero(); n * n];
    for v in 0..n {
        for s in 0..n {
            let mut total = BigRational::zero();
            for t in 0..n {
                if t != s && t != v {
                    total += ratio(s, t, v);
                }
            }
            contrib[v * n + s] = total;
        }
    }
    let bc_raw: Vec<BigRational> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&s| s != v)
                .fold(BigRational::zero(), |acc, s| acc + contrib[v * n + s].clone())
        })
        .collect();
    let pairs = Exact::real_from_u64(((n - 1) * (n - 2)) as u64);
    let bc = bc_raw.iter().map(|b| b / &pairs).collect();

    Ok(ExactCentrality {
        n,
        sigma,
        sigma_through: Some(through),
        sigma_arc: Some(arc),
        contrib,
        bc_raw,
        bc,
    })
}

fn shortest_paths(graph: &Graph, s: NodeId, t: NodeId) -> Vec<Vec<NodeId>> {
    struct Search<'a> {
        graph: &'a Graph,
        target: NodeId,
        best: Weight,
        found: Vec<Vec<NodeId>>,
        path: Vec<NodeId>,
        on_path: Vec<bool>,
    }

    impl Search<'_> {
        fn visit(&mut self, v: NodeId, len: Weight) {
            if len > self.best {
                return;
            }
            if v == self.target {
                if len < self.best {
                    self.best = len;
                    self.found.clear();
                }
                self.found.push(self.path.clone());
                return;
            }
            for &(u, w) in self.graph.neighbors(v) {
                if !self.on_path[u] {
                    self.on_path[u] = true;
                    self.path.push(u);
                    self.visit(u, len + w);
                    self.path.pop();
                    self.on_path[u] = false;
                }
            }
        }
    }

    let mut search = Search {
        graph,
        target: t,
        best: Weight::INFINITY,
        found: Vec::new(),
        path: vec![s],
        on_path: vec![false; graph.node_count()],
    };
    search.on_path[s] = true;
    search.visit(s, Weight::ZERO);
    search.found
}

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Graph, NodeId};
use crate::weight::Weight;

/// All-pairs distances and hop statistics over shortest paths.
///
/// `minhop(s, t)` / `maxhop(s, t)` are the fewest / most edges on any
/// shortest `s`–`t` path. `diam` is the largest `minhop`, `max_diam` the
/// largest `maxhop`; the latter bounds the protocol's convergence time.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphMetrics {
    n: usize,
    dist: Vec<Weight>,
    minhop: Vec<u32>,
    maxhop: Vec<u32>,
    pub diam: usize,
    pub max_diam: usize,
    /// `max_t minhop(v, t)`.
    pub ecc_hop: Vec<usize>,
    /// `max_t maxhop(v, t)`.
    pub ecc_maxhop: Vec<usize>,
}

impl GraphMetrics {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn dist(&self, s: NodeId, t: NodeId) -> Weight {
        self.dist[s * self.n + t]
    }

    pub fn minhop(&self, s: NodeId, t: NodeId) -> usize {
        self.minhop[s * self.n + t] as usize
    }

    pub fn maxhop(&self, s: NodeId, t: NodeId) -> usize {
        self.maxhop[s * self.n + t] as usize
    }

    /// Row of distances from `s`.
    pub fn dist_row(&self, s: NodeId) -> &[Weight] {
        &self.dist[s * self.n..(s + 1) * self.n]
    }
}

/// Single-source shortest paths with exact weights.
///
/// Returns the distance row and the nodes in the order they were settled,
/// which is nondecreasing in distance.
pub(crate) fn dijkstra(graph: &Graph, source: NodeId) -> (Vec<Weight>, Vec<NodeId>) {
    let n = graph.node_count();
    let mut dist = vec![Weight::INFINITY; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();
    dist[source] = Weight::ZERO;
    heap.push(Reverse((Weight::ZERO, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        order.push(u);
        for &(v, w) in graph.neighbors(u) {
            let cand = d + w;
            if cand < dist[v] {
                dist[v] = cand;
                heap.push(Reverse((cand, v)));
            }
        }
    }
    (dist, order)
}

pub fn compute_metrics(graph: &Graph) -> GraphMetrics {
    let n = graph.node_count();
    let mut dist = vec![Weight::INFINITY; n * n];
    let mut minhop = vec![0u32; n * n];
    let mut maxhop = vec![0u32; n * n];
    for s in 0..n {
        let (row, order) = dijkstra(graph, s);
        let base = s * n;
        for &t in order.iter().skip(1) {
            let mut lo = u32::MAX;
            let mut hi = 0;
            for &(u, w) in graph.neighbors(t) {
                if row[u] + w == row[t] {
                    lo = lo.min(minhop[base + u] + 1);
                    hi = hi.max(maxhop[base + u] + 1);
                }
            }
            minhop[base + t] = lo;
            maxhop[base + t] = hi;
        }
        dist[base..base + n].copy_from_slice(&row);
    }
    let row_max = |m: &[u32], v: usize| m[v * n..(v + 1) * n].iter().copied().max().unwrap_or(0) as usize;
    let ecc_hop: Vec<usize> = (0..n).map(|v| row_max(&minhop, v)).collect();
    let ecc_maxhop: Vec<usize> = (0..n).map(|v| row_max(&maxhop, v)).collect();
    GraphMetrics {
        n,
        diam: ecc_hop.iter().copied().max().unwrap_or(0),
        max_diam: ecc_maxhop.iter().copied().max().unwrap_or(0),
        dist,
        minhop,
        maxhop,
        ecc_hop,
        ecc_maxhop,
    }
}

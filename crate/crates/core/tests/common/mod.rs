//! Test-side ground truth, written independently of the library oracles.
//!
//! Distances come from Floyd-Warshall on integer ticks, path counts from a
//! pass over nodes in distance order, and centrality from the pair-counting
//! identity `σ_st(v) = σ_sv · σ_vt` whenever `d(s,v) + d(v,t) = d(s,t)`.

#![allow(dead_code)]

use distbc::graph::Graph;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

const INF: u64 = u64::MAX;

pub struct PairOracle {
    pub n: usize,
    /// Distances in weight ticks.
    pub dist: Vec<u64>,
    pub sigma: Vec<BigUint>,
}

impl PairOracle {
    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut dist = vec![INF; n * n];
        for v in 0..n {
            dist[v * n + v] = 0;
            for &(u, w) in g.neighbors(v) {
                dist[v * n + u] = dist[v * n + u].min(w.ticks());
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = dist[i * n + k];
                if dik == INF {
                    continue;
                }
                for j in 0..n {
                    let dkj = dist[k * n + j];
                    if dkj != INF && dik + dkj < dist[i * n + j] {
                        dist[i * n + j] = dik + dkj;
                    }
                }
            }
        }
        let mut sigma = vec![BigUint::zero(); n * n];
        for s in 0..n {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&t| dist[s * n + t]);
            sigma[s * n + s] = BigUint::from(1u32);
            for &t in order.iter().skip(1) {
                let mut total = BigUint::zero();
                for &(u, w) in g.neighbors(t) {
                    if dist[s * n + u] != INF && dist[s * n + u] + w.ticks() == dist[s * n + t] {
                        total += &sigma[s * n + u];
                    }
                }
                sigma[s * n + t] = total;
            }
        }
        PairOracle { n, dist, sigma }
    }

    pub fn dist(&self, s: usize, t: usize) -> u64 {
        self.dist[s * self.n + t]
    }

    pub fn sigma(&self, s: usize, t: usize) -> &BigUint {
        &self.sigma[s * self.n + t]
    }

    fn on_path(&self, s: usize, v: usize, t: usize) -> bool {
        self.dist(s, v) + self.dist(v, t) == self.dist(s, t)
    }

    /// Unnormalized centrality in exact rationals.
    pub fn bc_raw_exact(&self) -> Vec<BigRational> {
        let n = self.n;
        (0..n)
            .map(|v| {
                let mut total = BigRational::zero();
                for s in (0..n).filter(|&s| s != v) {
                    for t in (0..n).filter(|&t| t != v && t != s) {
                        if self.on_path(s, v, t) {
                            let num = self.sigma(s, v) * self.sigma(v, t);
                            total += BigRational::new(num.into(), self.sigma(s, t).clone().into());
                        }
                    }
                }
                total
            })
            .collect()
    }

    pub fn bc_exact(&self) -> Vec<BigRational> {
        let n = self.n as i64;
        let scale = BigRational::from_integer(((n - 1) * (n - 2)).into());
        self.bc_raw_exact().into_iter().map(|b| b / scale.clone()).collect()
    }

    /// Unnormalized centrality in floating point, for larger graphs.
    pub fn bc_raw_f64(&self) -> Vec<f64> {
        let n = self.n;
        let sig: Vec<f64> = self.sigma.iter().map(|x| x.to_f64().unwrap()).collect();
        (0..n)
            .map(|v| {
                let mut total = 0.0;
                for s in (0..n).filter(|&s| s != v) {
                    for t in (0..n).filter(|&t| t != v && t != s) {
                        if self.on_path(s, v, t) {
                            total += sig[s * n + v] * sig[v * n + t] / sig[s * n + t];
                        }
                    }
                }
                total
            })
            .collect()
    }

    pub fn bc_f64(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.bc_raw_f64().into_iter().map(|b| b / ((n - 1.0) * (n - 2.0))).collect()
    }

    /// `bc_v(s)`: the share of source `s` in `v`'s centrality.
    pub fn contribution_exact(&self, v: usize, s: usize) -> BigRational {
        let mut total = BigRational::zero();
        for t in (0..self.n).filter(|&t| t != v && t != s) {
            if self.on_path(s, v, t) {
                let num = self.sigma(s, v) * self.sigma(v, t);
                total += BigRational::new(num.into(), self.sigma(s, t).clone().into());
            }
        }
        total
    }

    /// Neighbors of `v` that are next hops from `v` towards `t`.
    pub fn next_hops(&self, g: &Graph, v: usize, t: usize) -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .filter(|&&(u, w)| self.dist(u, t) != INF && w.ticks() + self.dist(u, t) == self.dist(v, t))
            .map(|&(u, _)| u)
            .collect()
    }

    /// Neighbors of `v` for which `v` is a next hop towards `t`.
    pub fn prev_hops(&self, g: &Graph, v: usize, t: usize) -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .filter(|&&(u, w)| self.dist(u, t) == self.dist(v, t) + w.ticks())
            .map(|&(u, _)| u)
            .collect()
    }

    /// `bc_v(s)` for every `(v, s)`, row-major by `v`, in floating point.
    pub fn contributions_f64(&self) -> Vec<f64> {
        let n = self.n;
        let sig: Vec<f64> = self.sigma.iter().map(|x| x.to_f64().unwrap()).collect();
        let mut out = vec![0.0; n * n];
        for v in 0..n {
            for s in (0..n).filter(|&s| s != v) {
                let mut total = 0.0;
                for t in (0..n).filter(|&t| t != v && t != s) {
                    if self.on_path(s, v, t) {
                        total += sig[s * n + v] * sig[v * n + t] / sig[s * n + t];
                    }
                }
                out[v * n + s] = total;
            }
        }
        out
    }
}

/// Relative agreement within `tol`, with an absolute floor of 1e-12 for
/// floating-point residue around exact zeros.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    let diff = (a - b).abs();
    diff <= 1e-12 || diff <= tol * a.abs().max(b.abs())
}

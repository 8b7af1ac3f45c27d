//! A fixed, seeded collection of test graphs covering every generator
//! family, unit and {1,2,5} weights, from 3 to 511 nodes.

use crate::graph::{generate, Family, Graph, GraphError, WeightScheme};
use crate::seed;

#[derive(Debug, Clone)]
pub struct SuiteGraph {
    pub name: String,
    pub graph: Graph,
}

impl SuiteGraph {
    pub fn weighted(&self) -> bool {
        !self.graph.is_unit_weight()
    }
}

fn build(family: Family, weights: WeightScheme) -> Result<SuiteGraph, GraphError> {
    let name = format!("{family} {weights}");
    Ok(SuiteGraph { graph: generate(&family, &weights)?, name })
}

/// Edge probability giving a connected Erdős–Rényi graph with high
/// probability: `c · ln n / n`.
pub fn er_probability(n: usize, c: f64) -> f64 {
    (c * (n as f64).ln() / n as f64).min(1.0)
}

/// Radius giving a connected random geometric graph with high probability.
pub fn geometric_radius(n: usize, c: f64) -> f64 {
    (c * (n as f64).ln() / (std::f64::consts::PI * n as f64)).sqrt()
}

fn set125(master: u64, index: u64) -> WeightScheme {
    WeightScheme::one_two_five(seed::derive(master, seed::WEIGHTS, index))
}

/// The standard suite: over 200 graphs, listed by family.
pub fn standard_suite() -> Vec<SuiteGraph> {
    let master = 2024;
    let mut families: Vec<(Family, WeightScheme)> = Vec::new();
    let unit = || WeightScheme::Unit;
    let mut k = 0u64;
    let mut next = || {
        k += 1;
        k
    };

    for n in [3, 4, 5, 7, 10] {
        families.push((Family::Path { n }, unit()));
    }
    for n in [3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15, 20, 25, 31, 40] {
        families.push((Family::Cycle { n }, unit()));
    }
    for leaves in [2, 4, 9, 19] {
        families.push((Family::Star { leaves }, unit()));
    }
    for n in [3, 4, 5, 8] {
        families.push((Family::Complete { n }, unit()));
    }
    for (width, height) in [
        (2, 2), (2, 5), (3, 3), (3, 7), (4, 4), (5, 5), (6, 8), (8, 8), (10, 10), (12, 12), (15, 15), (20, 20),
    ] {
        families.push((Family::Grid { width, height }, unit()));
    }
    for (width, height) in [(4, 4), (5, 5), (7, 7), (10, 10)] {
        families.push((Family::Grid { width, height }, set125(master, next())));
    }
    for dim in 1..=8 {
        families.push((Family::Hypercube { dim }, unit()));
    }
    for height in 1..=8 {
        families.push((Family::BinaryTree { height }, unit()));
    }
    for weighted in [false, true] {
        for (n, count) in [(8, 8), (10, 8), (20, 8), (30, 8), (50, 8), (80, 6), (120, 4), (200, 3)] {
            for _ in 0..count {
                let i = next();
                let f = Family::ErdosRenyi {
                    n,
                    p: er_probability(n, 2.0),
                    seed: seed::derive(master, seed::TOPOLOGY, i),
                };
                let w = if weighted { set125(master, i) } else { unit() };
                families.push((f, w));
            }
        }
    }
    for weighted in [false, true] {
        for n in [20, 50, 100, 200] {
            for m in [1, 2, 3] {
                let i = next();
                let f = Family::BarabasiAlbert { n, m, seed: seed::derive(master, seed::TOPOLOGY, i) };
                let w = if weighted { set125(master, i) } else { unit() };
                families.push((f, w));
            }
        }
    }
    for weighted in [false, true] {
        for n in [20, 40, 60, 100] {
            for _ in 0..2 {
                let i = next();
                let f = Family::Geometric {
                    n,
                    radius: geometric_radius(n, 3.0),
                    seed: seed::derive(master, seed::TOPOLOGY, i),
                };
                let w = if weighted { set125(master, i) } else { unit() };
                families.push((f, w));
            }
        }
    }

    families
        .into_iter()
        .map(|(f, w)| build(f, w).expect("suite graphs are connected"))
        .collect()
}

/// `count` weighted {1,2,5} Erdős–Rényi graphs on `n` nodes.
pub fn weighted_er(n: usize, c: f64, count: usize, master: u64) -> Vec<SuiteGraph> {
    (0..count as u64)
        .map(|i| {
            let f = Family::ErdosRenyi { n, p: er_probability(n, c), seed: seed::derive(master, seed::TOPOLOGY, i) };
            build(f, set125(master, i)).expect("connected within the retry budget")
        })
        .collect()
}

/// `count` unit Erdős–Rényi graphs on `n` nodes with expected degree `deg`.
pub fn sparse_er(n: usize, deg: f64, count: usize, master: u64) -> Vec<SuiteGraph> {
    (0..count as u64)
        .map(|i| {
            let p = (deg / (n - 1) as f64).min(1.0);
            let f = Family::ErdosRenyi { n, p, seed: seed::derive(master, seed::TOPOLOGY, i) };
            build(f, WeightScheme::Unit).expect("connected within the retry budget")
        })
        .collect()
}

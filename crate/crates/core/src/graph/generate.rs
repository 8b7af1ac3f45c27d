//! Synthetic graph families.
//!
//! Every generator is a pure function of its parameters and seed. Random
//! families are redrawn from the same RNG stream until the instance is
//! connected, up to [`MAX_RETRIES`] draws.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compute_metrics, Graph, GraphError, NodeId};
use crate::seed;
use crate::weight::{Weight, DEFAULT_PRECISION};

pub const MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Grid { width: usize, height: usize },
    Hypercube { dim: u32 },
    /// Complete binary tree with `2^(height+1) - 1` nodes.
    BinaryTree { height: u32 },
    Cycle { n: usize },
    Path { n: usize },
    Star { leaves: usize },
    Complete { n: usize },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    /// Preferential attachment starting from a clique on `m + 1` nodes.
    BarabasiAlbert { n: usize, m: usize, seed: u64 },
    /// Uniform points in the unit square, joined when at distance `<= radius`.
    Geometric { n: usize, radius: f64, seed: u64 },
}

/// How edge weights are assigned after the topology is drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightScheme {
    Unit,
    /// Independent draws from `values` (in units) with the given probabilities.
    RandomFromSet {
        values: Vec<u64>,
        probabilities: Vec<f64>,
        seed: u64,
    },
}

impl WeightScheme {
    /// Weights from {1, 2, 5} with probabilities (3/7, 3/7, 1/7), mean 2.
    pub fn one_two_five(seed: u64) -> Self {
        WeightScheme::RandomFromSet {
            values: vec![1, 2, 5],
            probabilities: vec![3.0 / 7.0, 3.0 / 7.0, 1.0 / 7.0],
            seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        match self {
            WeightScheme::Unit => WeightScheme::Unit,
            WeightScheme::RandomFromSet {
                values,
                probabilities,
                ..
            } => WeightScheme::RandomFromSet {
                values: values.clone(),
                probabilities: probabilities.clone(),
                seed,
            },
        }
    }
}

impl Family {
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            Family::ErdosRenyi { .. } | Family::BarabasiAlbert { .. } | Family::Geometric { .. }
        )
    }

    /// Same family with its seed replaced; deterministic families are unchanged.
    pub fn with_seed(&self, seed: u64) -> Self {
        let mut f = self.clone();
        match &mut f {
            Family::ErdosRenyi { seed: s, .. }
            | Family::BarabasiAlbert { seed: s, .. }
            | Family::Geometric { seed: s, .. } => *s = seed,
            _ => {}
        }
        f
    }
}

/// Builds an instance of `family` weighted by `weights`.
pub fn generate(family: &Family, weights: &WeightScheme) -> Result<Graph, GraphError> {
    let (n, edges) = topology(family)?;
    let weighted = assign_weights(&edges, weights)?;
    Graph::from_edges(n, weighted, DEFAULT_PRECISION)
}

/// Draws instances with seeds derived from `seed` until one has hop-diameter
/// `diam`, trying at most `attempts` times.
pub fn generate_with_diameter(
    family: &Family,
    weights: &WeightScheme,
    diam: usize,
    seed: u64,
    attempts: usize,
) -> Result<Graph, GraphError> {
    for i in 0..attempts as u64 {
        let s = seed::derive(seed, seed::ATTEMPT, i);
        let f = family.with_seed(seed::derive(s, seed::TOPOLOGY, 0));
        let w = weights.with_seed(seed::derive(s, seed::WEIGHTS, 0));
        let g = match generate(&f, &w) {
            Ok(g) => g,
            Err(GraphError::RetriesExhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        if compute_metrics(&g).diam == diam {
            return Ok(g);
        }
    }
    Err(GraphError::RetriesExhausted(attempts))
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

fn topology(family: &Family) -> Result<(usize, Vec<(NodeId, NodeId)>), GraphError> {
    match *family {
        Family::Grid { width, height } => {
            if width == 0 || height == 0 {
                return Err(invalid("grid sides must be positive"));
            }
            let id = |x: usize, y: usize| y * width + x;
            let mut edges = Vec::new();
            for y in 0..height {
                for x in 0..width {
                    if x + 1 < width {
                        edges.push((id(x, y), id(x + 1, y)));
                    }
                    if y + 1 < height {
                        edges.push((id(x, y), id(x, y + 1)));
                    }
                }
            }
            Ok((width * height, edges))
        }
        Family::Hypercube { dim } => {
            if dim == 0 || dim > 20 {
                return Err(invalid("hypercube dimension must be in 1..=20"));
            }
            let n = 1usize << dim;
            let edges = (0..n)
                .flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))))
                .filter(|&(u, v)| u < v)
                .collect();
            Ok((n, edges))
        }
        Family::BinaryTree { height } => {
            if height > 24 {
                return Err(invalid("tree height must be at most 24"));
            }
            let n = (1usize << (height + 1)) - 1;
            Ok((n, (1..n).map(|v| ((v - 1) / 2, v)).collect()))
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(invalid("a cycle needs at least 3 nodes"));
            }
            Ok((n, (0..n).map(|v| (v, (v + 1) % n)).collect()))
        }
        Family::Path { n } => {
            if n == 0 {
                return Err(invalid("a path needs at least 1 node"));
            }
            Ok((n, (1..n).map(|v| (v - 1, v)).collect()))
        }
        Family::Star { leaves } => {
            if leaves == 0 {
                return Err(invalid("a star needs at least 1 leaf"));
            }
            Ok((leaves + 1, (1..=leaves).map(|v| (0, v)).collect()))
        }
        Family::Complete { n } => {
            if n == 0 {
                return Err(invalid("a complete graph needs at least 1 node"));
            }
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            Ok((n, edges))
        }
        Family::ErdosRenyi { n, p, seed } => {
            if n == 0 || !(0.0..=1.0).contains(&p) {
                return Err(invalid("erdos-renyi needs n >= 1 and p in [0, 1]"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            retry_until_connected(n, || {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.random_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                edges
            })
        }
        Family::BarabasiAlbert { n, m, seed } => {
            if m == 0 || n <= m {
                return Err(invalid("barabasi-albert needs 1 <= m < n"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            // Every edge endpoint appears once here, so a uniform pick is degree-proportional.
            let mut endpoints = Vec::new();
            for u in 0..=m {
                for v in u + 1..=m {
                    edges.push((u, v));
                    endpoints.extend([u, v]);
                }
            }
            for v in m + 1..n {
                let mut targets: Vec<NodeId> = Vec::with_capacity(m);
                while targets.len() < m {
                    let t = endpoints[rng.random_range(0..endpoints.len())];
                    if !targets.contains(&t) {
                        targets.push(t);
                    }
                }
                for t in targets {
                    edges.push((t, v));
                    endpoints.extend([t, v]);
                }
            }
            Ok((n, edges))
        }
        Family::Geometric { n, radius, seed } => {
            if n == 0 || radius.is_nan() || radius <= 0.0 {
                return Err(invalid("geometric needs n >= 1 and radius > 0"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r2 = radius * radius;
            retry_until_connected(n, || {
                let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
                        if dx * dx + dy * dy <= r2 {
                            edges.push((u, v));
                        }
                    }
                }
                edges
            })
        }
    }
}

fn retry_until_connected(
    n: usize,
    mut draw: impl FnMut() -> Vec<(NodeId, NodeId)>,
) -> Result<(usize, Vec<(NodeId, NodeId)>), GraphError> {
    for _ in 0..MAX_RETRIES {
        let edges = draw();
        if Graph::unweighted(n, edges.iter().copied()).is_ok() {
            return Ok((n, edges));
        }
    }
    Err(GraphError::RetriesExhausted(MAX_RETRIES))
}

fn assign_weights(
    edges: &[(NodeId, NodeId)],
    scheme: &WeightScheme,
) -> Result<Vec<(NodeId, NodeId, Weight)>, GraphError> {
    match scheme {
        WeightScheme::Unit => {
            let unit = Weight::from_units(1, DEFAULT_PRECISION);
            Ok(edges.iter().map(|&(u, v)| (u, v, unit)).collect())
        }
        WeightScheme::RandomFromSet {
            values,
            probabilities,
            seed,
        } => {
            if values.is_empty() || values.len() != probabilities.len() {
                return Err(invalid("weight set and probabilities must be non-empty and aligned"));
            }
            if values.contains(&0) {
                return Err(invalid("weights must be positive"));
            }
            let dist = WeightedIndex::new(probabilities)
                .map_err(|e| invalid(format!("bad weight probabilities: {e}")))?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok(edges
                .iter()
                .map(|&(u, v)| {
                    let w = values[dist.sample(&mut rng)];
                    (u, v, Weight::from_units(w, DEFAULT_PRECISION))
                })
                .collect())
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Grid { width, height } => write!(f, "grid:{width}x{height}"),
            Family::Hypercube { dim } => write!(f, "hypercube:{dim}"),
            Family::BinaryTree { height } => write!(f, "tree:{height}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Star { leaves } => write!(f, "star:{leaves}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::ErdosRenyi { n, p, seed } => write!(f, "er:{n}:{p}:{seed}"),
            Family::BarabasiAlbert { n, m, seed } => write!(f, "ba:{n}:{m}:{seed}"),
            Family::Geometric { n, radius, seed } => write!(f, "geo:{n}:{radius}:{seed}"),
        }
    }
}

fn field<T: FromStr>(text: &str, what: &str) -> Result<T, GraphError> {
    text.parse()
        .map_err(|_| invalid(format!("cannot parse {what} from `{text}`")))
}

impl FromStr for Family {
    type Err = GraphError;

    /// Accepts `grid:WxH`, `hypercube:D`, `tree:H`, `cycle:N`, `path:N`,
    /// `star:K`, `complete:N`, `er:N:P[:SEED]`, `ba:N:M[:SEED]`, `geo:N:R[:SEED]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let seed_at = |i: usize| -> Result<u64, GraphError> {
            parts.get(i).map_or(Ok(0), |t| field(t, "seed"))
        };
        let arity = |lo: usize, hi: usize| {
            if parts.len() < lo || parts.len() > hi {
                Err(invalid(format!("wrong number of fields in `{s}`")))
            } else {
                Ok(())
            }
        };
        match parts[0] {
            "grid" => {
                arity(2, 2)?;
                let (w, h) = parts[1]
                    .split_once('x')
                    .ok_or_else(|| invalid("grid expects WxH"))?;
                Ok(Family::Grid {
                    width: field(w, "width")?,
                    height: field(h, "height")?,
                })
            }
            "hypercube" => {
                arity(2, 2)?;
                Ok(Family::Hypercube { dim: field(parts[1], "dimension")? })
            }
            "tree" => {
                arity(2, 2)?;
                Ok(Family::BinaryTree { height: field(parts[1], "height")? })
            }
            "cycle" => {
                arity(2, 2)?;
                Ok(Family::Cycle { n: field(parts[1], "n")? })
            }
            "path" => {
                arity(2, 2)?;
                Ok(Family::Path { n: field(parts[1], "n")? })
            }
            "star" => {
                arity(2, 2)?;
                Ok(Family::Star { leaves: field(parts[1], "leaves")? })
            }
            "complete" => {
                arity(2, 2)?;
                Ok(Family::Complete { n: field(parts[1], "n")? })
            }
            "er" => {
                arity(3, 4)?;
                Ok(Family::ErdosRenyi {
                    n: field(parts[1], "n")?,
                    p: field(parts[2], "p")?,
                    seed: seed_at(3)?,
                })
            }
            "ba" => {
                arity(3, 4)?;
                Ok(Family::BarabasiAlbert {
                    n: field(parts[1], "n")?,
                    m: field(parts[2], "m")?,
                    seed: seed_at(3)?,
                })
            }
            "geo" => {
                arity(3, 4)?;
                Ok(Family::Geometric {
                    n: field(parts[1], "n")?,
                    radius: field(parts[2], "radius")?,
                    seed: seed_at(3)?,
                })
            }
            other => Err(invalid(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightScheme::Unit => f.write_str("unit"),
            WeightScheme::RandomFromSet {
                values,
                probabilities,
                seed,
            } => {
                let join = |it: Vec<String>| it.join(",");
                write!(
                    f,
                    "set:{}:p={}:{seed}",
                    join(values.iter().map(u64::to_string).collect()),
                    join(probabilities.iter().map(f64::to_string).collect())
                )
            }
        }
    }
}

impl FromStr for WeightScheme {
    type Err = GraphError;

    /// `unit`, or `set:V1,V2,..[:p=P1,P2,..][:SEED]`. Without `p=` the set
    /// `1,2,5` gets (3/7, 3/7, 1/7) and any other set is uniform.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts[0] {
            "unit" if parts.len() == 1 => Ok(WeightScheme::Unit),
            "set" if parts.len() >= 2 => {
                let values: Vec<u64> = parts[1]
                    .split(',')
                    .map(|v| field(v, "weight"))
                    .collect::<Result<_, _>>()?;
                let mut probabilities = None;
                let mut seed = 0;
                for extra in &parts[2..] {
                    if let Some(ps) = extra.strip_prefix("p=") {
                        probabilities = Some(
                            ps.split(',')
                                .map(|p| field(p, "probability"))
                                .collect::<Result<Vec<f64>, _>>()?,
                        );
                    } else {
                        seed = field(extra, "seed")?;
                    }
                }
                let probabilities = match probabilities {
                    Some(p) => p,
                    None if values == [1, 2, 5] => vec![3.0 / 7.0, 3.0 / 7.0, 1.0 / 7.0],
                    None => vec![1.0 / values.len() as f64; values.len()],
                };
                Ok(WeightScheme::RandomFromSet {
                    values,
                    probabilities,
                    seed,
                })
            }
            _ => Err(invalid(format!("unknown weight scheme `{s}`"))),
        }
    }
}

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::protocol::Mode;
use crate::weight::DEFAULT_PRECISION;

/// Where the graph comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub struct GraphSource {
    /// Edge-list file. Exactly one of `file` and `generator` must be set.
    pub file: Option<PathBuf>,
    /// Generator spec such as `grid:5x5` or `er:200:0.05`.
    pub generator: Option<String>,
    /// Weight scheme for generated graphs: `unit` or `set:1,2,5`.
    #[serde(default = "default_weights")]
    pub weights: String,
}

fn default_weights() -> String {
    "unit".into()
}

impl GraphSource {
    pub fn file(path: impl Into<PathBuf>) -> Self {
        GraphSource { file: Some(path.into()), generator: None, weights: default_weights() }
    }

    pub fn generator(spec: &str, weights: &str) -> Self {
        GraphSource { file: None, generator: Some(spec.into()), weights: weights.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    /// `u64` counts, `f64` contributions.
    #[default]
    Float,
    /// Unbounded counts, `f64` contributions.
    Wide,
    /// Unbounded counts, exact rational contributions.
    Rational,
}

impl std::str::FromStr for Arithmetic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Arithmetic::Float),
            "wide" => Ok(Arithmetic::Wide),
            "rational" | "exact" => Ok(Arithmetic::Rational),
            other => Err(format!("unknown arithmetic `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    #[default]
    Canonical,
    Shuffle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "yes")]
    pub error_csv: bool,
    #[serde(default = "yes")]
    pub nodes_csv: bool,
    #[serde(default = "yes")]
    pub histogram_csv: bool,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn yes() -> bool {
    true
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs { dir: default_dir(), error_csv: true, nodes_csv: true, histogram_csv: true }
    }
}

/// Seeds of a sweep: an explicit list, or `0..count`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    #[serde(default)]
    pub seeds: Vec<u64>,
    pub count: Option<u64>,
}

impl Sweep {
    pub fn seeds(&self) -> Vec<u64> {
        match self.count {
            Some(c) if self.seeds.is_empty() => (0..c).collect(),
            _ => self.seeds.clone(),
        }
    }
}

/// Everything that pins down a run or a sweep.
///
/// ```toml
/// seed = 7
/// mode = "fast"
/// arithmetic = "float"
/// order = "shuffle"
///
/// [graph]
/// generator = "er:200:0.05"
/// weights = "set:1,2,5"
///
/// [output]
/// dir = "out/er200"
///
/// [sweep]
/// count = 20
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    /// Fractional digits of edge weights for generated graphs; files carry
    /// their own in the header.
    #[serde(default = "default_precision")]
    pub precision: u32,
    /// Master seed. When set, generator and shuffle seeds are derived from it
    /// and any seed inside the generator spec is ignored.
    pub seed: Option<u64>,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub arithmetic: Arithmetic,
    #[serde(default)]
    pub order: Order,
    pub max_phases: Option<usize>,
    #[serde(default)]
    pub output: Outputs,
    pub sweep: Option<Sweep>,
}

fn default_precision() -> u32 {
    DEFAULT_PRECISION
}

fn default_mode() -> Mode {
    Mode::Fast
}

impl ExperimentConfig {
    pub fn new(graph: GraphSource) -> Self {
        ExperimentConfig {
            graph,
            precision: DEFAULT_PRECISION,
            seed: None,
            mode: Mode::Fast,
            arithmetic: Arithmetic::Float,
            order: Order::Canonical,
            max_phases: None,
            output: Outputs::default(),
            sweep: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

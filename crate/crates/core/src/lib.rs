//! Distributed betweenness centrality.
//!
//! A Bellman-Ford distance-vector protocol extended so that every node of a
//! network learns its own betweenness centrality, together with a
//! synchronous simulator, centralized oracles and the measurements used to
//! study convergence.

pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod numeric;
pub mod oracle;
pub mod protocol;
pub mod seed;
pub mod simulator;
pub mod suite;
pub mod weight;

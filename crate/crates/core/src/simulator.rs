//! Bulk-synchronous phase engine.
//!
//! A phase snapshots every node's outgoing vector, delivers each vector to
//! all neighbors and lets every node process its inbox. Phase 1 is the first
//! exchange; phase 0 denotes the initial states.
//!
//! ```
//! use distbc::graph::{generate, Family, WeightScheme};
//! use distbc::numeric::Float;
//! use distbc::protocol::Mode;
//! use distbc::simulator::{run, Schedule};
//!
//! let g = generate(&Family::Cycle { n: 6 }, &WeightScheme::Unit).unwrap();
//! let sim = run::<Float>(&g, Mode::Fast, &Schedule::canonical(), &mut []).unwrap();
//! assert_eq!(sim.quiescence_phase, 7);
//! assert!(sim.final_centrality().iter().all(|&c| c == 4.0));
//! ```

use std::hash::Hasher;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::numeric::Numeric;
use crate::protocol::{Changes, Message, Mode, NodeState, ProtocolError};
use crate::seed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("no quiescence within {0} phases")]
    NoQuiescence(usize),
    #[error("max_phases must be at least 1")]
    ZeroPhases,
}

/// Order in which a node processes the messages of one phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeliveryOrder {
    /// By sender id, then target id.
    Canonical,
    /// A fresh seeded permutation of each node's inbox in every phase.
    Shuffled { seed: u64 },
}

/// What the run keeps of each post-phase state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Snapshots {
    None,
    /// One hash of all node states per phase.
    #[default]
    Digest,
    /// Clones of all node states per phase.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub order: DeliveryOrder,
    /// Phase cap; `None` means `4n`.
    pub max_phases: Option<usize>,
    pub snapshots: Snapshots,
}

impl Schedule {
    pub fn canonical() -> Self {
        Schedule {
            order: DeliveryOrder::Canonical,
            max_phases: None,
            snapshots: Snapshots::Digest,
        }
    }

    pub fn shuffled(seed: u64) -> Self {
        Schedule {
            order: DeliveryOrder::Shuffled { seed },
            ..Schedule::canonical()
        }
    }

    pub fn with_max_phases(mut self, max: usize) -> Self {
        self.max_phases = Some(max);
        self
    }

    pub fn with_snapshots(mut self, snapshots: Snapshots) -> Self {
        self.snapshots = snapshots;
        self
    }

    pub fn phase_cap(&self, n: usize) -> usize {
        self.max_phases.unwrap_or(4 * n.max(1))
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::canonical()
    }
}

/// Called with phase 0 and the initial states, then after every phase.
pub trait Observer<A: Numeric> {
    fn observe(&mut self, phase: usize, states: &[NodeState<A>]);
}

impl<A: Numeric, F: FnMut(usize, &[NodeState<A>])> Observer<A> for F {
    fn observe(&mut self, phase: usize, states: &[NodeState<A>]) {
        self(phase, states)
    }
}

/// Per-phase activity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhaseSummary {
    /// Nodes whose own fields changed.
    pub own_changed: usize,
    /// Nodes with any change, including stored neighbor values.
    pub any_changed: usize,
    pub messages: u64,
    pub ops: u64,
}

/// Step-by-step driver; [`run`] wraps it with quiescence detection.
pub struct Simulator<'g, A: Numeric> {
    graph: &'g Graph,
    mode: Mode,
    order: DeliveryOrder,
    states: Vec<NodeState<A>>,
    phase: usize,
}

impl<'g, A: Numeric> Simulator<'g, A> {
    pub fn new(graph: &'g Graph, mode: Mode, order: DeliveryOrder) -> Result<Self, SimError> {
        let n = graph.node_count();
        let states = (0..n)
            .map(|v| {
                let nbrs: Vec<NodeId> = graph.neighbors(v).iter().map(|&(u, _)| u).collect();
                NodeState::init(v, n, &nbrs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Simulator { graph, mode, order, states, phase: 0 })
    }

    pub fn phase(&self) -> usize {
        self.phase
    }

    pub fn states(&self) -> &[NodeState<A>] {
        &self.states
    }

    pub fn into_states(self) -> Vec<NodeState<A>> {
        self.states
    }

    /// Runs one phase and returns each node's merged changes.
    pub fn step(&mut self) -> Result<Vec<Changes>, SimError> {
        self.phase += 1;
        let n = self.states.len();
        let outboxes: Vec<Vec<Message<A>>> =
            self.states.iter().map(|s| s.build_outbox().messages).collect();
        let mut changes = vec![Changes::default(); n];
        let mut inbox: Vec<(usize, NodeId)> = Vec::new();
        for (v, state) in self.states.iter_mut().enumerate() {
            let nbrs = self.graph.neighbors(v);
            inbox.clear();
            for slot in 0..nbrs.len() {
                inbox.extend((0..n).map(|t| (slot, t)));
            }
            if let DeliveryOrder::Shuffled { seed: s } = self.order {
                let index = (self.phase as u64) * (n as u64) + v as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(seed::derive(s, seed::SHUFFLE, index));
                inbox.shuffle(&mut rng);
            }
            for &(slot, t) in &inbox {
                let (u, w) = nbrs[slot];
                let ch = state.receive_at(self.mode, slot, &outboxes[u][t], w)?;
                changes[v].merge(ch);
            }
        }
        Ok(changes)
    }

    /// Hash of every node state.
    pub fn digest(&self) -> u64 {
        let mut h = StateHasher::default();
        for s in &self.states {
            s.hash_state(&mut h);
        }
        h.finish()
    }
}

/// Multiply-rotate word hasher. Digests only need to be stable and
/// well spread, not collision-resistant.
#[derive(Default)]
struct StateHasher(u64);

impl StateHasher {
    const K: u64 = 0x517c_c1b7_2722_0a95;

    fn add(&mut self, word: u64) {
        self.0 = (self.0.rotate_left(5) ^ word).wrapping_mul(Self::K);
    }
}

impl Hasher for StateHasher {
    fn write(&mut self, bytes: &[u8]) {
        let mut chunks = bytes.chunks_exact(8);
        for c in &mut chunks {
            self.add(u64::from_le_bytes(c.try_into().unwrap()));
        }
        let rest = chunks.remainder();
        if !rest.is_empty() {
            let mut buf = [0u8; 8];
            buf[..rest.len()].copy_from_slice(rest);
            self.add(u64::from_le_bytes(buf));
        }
    }

    fn write_u8(&mut self, i: u8) {
        self.add(i as u64);
    }

    fn write_u64(&mut self, i: u64) {
        self.add(i);
    }

    fn write_usize(&mut self, i: usize) {
        self.add(i as u64);
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

/// A completed, quiescent run.
#[derive(Debug, Clone)]
pub struct SimulationRun<A: Numeric> {
    pub mode: Mode,
    pub schedule: Schedule,
    /// Last phase in which any node's own fields (D, NH, PH, S, B, C)
    /// changed. States after this phase are final.
    pub quiescence_phase: usize,
    /// Last phase in which any C changed.
    pub c_quiescence_phase: usize,
    /// Last phase with any change at all; stored neighbor values settle one
    /// phase after the values they copy.
    pub settled_phase: usize,
    /// Phases executed, including the final silent one.
    pub phases_executed: usize,
    /// `C` of every node after phases `0..=phases_executed`.
    pub centrality: Vec<Vec<f64>>,
    pub summaries: Vec<PhaseSummary>,
    /// Per node: last phase in which some `D` entry changed (0 if never).
    pub t_d: Vec<usize>,
    /// Per node: last phase in which `C` changed (0 if never).
    pub t_c: Vec<usize>,
    pub digests: Vec<u64>,
    pub snapshots: Vec<Vec<NodeState<A>>>,
    pub final_states: Vec<NodeState<A>>,
}

impl<A: Numeric> SimulationRun<A> {
    pub fn node_count(&self) -> usize {
        self.final_states.len()
    }

    pub fn final_centrality(&self) -> &[f64] {
        self.centrality.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Total receive calls and elementary operations over the run.
    pub fn work(&self) -> (u64, u64) {
        self.final_states
            .iter()
            .fold((0, 0), |(m, o), s| (m + s.messages(), o + s.ops()))
    }

    /// `(T_D, T_C)` for every node.
    pub fn local_convergence(&self) -> Vec<(usize, usize)> {
        self.t_d.iter().copied().zip(self.t_c.iter().copied()).collect()
    }
}

/// Runs phases until one passes with no change anywhere.
///
/// Fails with [`SimError::NoQuiescence`] if the phase cap is reached while
/// states are still changing.
pub fn run<A: Numeric>(
    graph: &Graph,
    mode: Mode,
    schedule: &Schedule,
    observers: &mut [&mut dyn Observer<A>],
) -> Result<SimulationRun<A>, SimError> {
    let n = graph.node_count();
    let cap = schedule.phase_cap(n);
    if cap == 0 {
        return Err(SimError::ZeroPhases);
    }
    let mut sim = Simulator::<A>::new(graph, mode, schedule.order)?;
    let centrality_of = |states: &[NodeState<A>]| -> Vec<f64> {
        states.iter().map(|s| A::real_to_f64(s.centrality())).collect()
    };

    let mut centrality = vec![centrality_of(sim.states())];
    let mut summaries = vec![PhaseSummary::default()];
    let mut digests = Vec::new();
    let mut snapshots = Vec::new();
    match schedule.snapshots {
        Snapshots::None => {}
        Snapshots::Digest => digests.push(sim.digest()),
        Snapshots::Full => snapshots.push(sim.states().to_vec()),
    }
    for o in observers.iter_mut() {
        o.observe(0, sim.states());
    }

    let mut t_d = vec![0; n];
    let mut t_c = vec![0; n];
    let (mut quiescence, mut c_quiescence, mut settled) = (0, 0, 0);
    let (mut messages, mut ops) = (0, 0);

    loop {
        if sim.phase() == cap {
            return Err(SimError::NoQuiescence(cap));
        }
        let changes = sim.step()?;
        let phase = sim.phase();
        let mut summary = PhaseSummary::default();
        for (v, ch) in changes.iter().enumerate() {
            if ch.distance {
                t_d[v] = phase;
            }
            if ch.centrality {
                t_c[v] = phase;
                c_quiescence = phase;
            }
            if ch.own() {
                summary.own_changed += 1;
                quiescence = phase;
            }
            if ch.any() {
                summary.any_changed += 1;
                settled = phase;
            }
        }
        let (m, o) = sim
            .states()
            .iter()
            .fold((0, 0), |(m, o), s| (m + s.messages(), o + s.ops()));
        summary.messages = m - messages;
        summary.ops = o - ops;
        (messages, ops) = (m, o);

        centrality.push(centrality_of(sim.states()));
        match schedule.snapshots {
            Snapshots::None => {}
            Snapshots::Digest => digests.push(sim.digest()),
            Snapshots::Full => snapshots.push(sim.states().to_vec()),
        }
        for o in observers.iter_mut() {
            o.observe(phase, sim.states());
        }
        let silent = summary.any_changed == 0;
        summaries.push(summary);
        if silent {
            break;
        }
    }

    Ok(SimulationRun {
        mode,
        schedule: *schedule,
        quiescence_phase: quiescence,
        c_quiescence_phase: c_quiescence,
        settled_phase: settled,
        phases_executed: sim.phase(),
        centrality,
        summaries,
        t_d,
        t_c,
        digests,
        snapshots,
        final_states: sim.into_states(),
    })
}

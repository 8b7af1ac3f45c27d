use num_traits::{CheckedAdd, CheckedSub, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{Changes, Message, Mode, Outbox, ProtocolError};
use crate::graph::NodeId;
use crate::numeric::{guarded_term, Numeric};
use crate::weight::Weight;

/// Membership of a neighbor in `NH[t]` / `PH[t]`.
///
/// A receive first removes the sender from both sets and then inserts it
/// into at most one, so a single tag per `(neighbor, target)` represents both
/// sets with O(1) insert, delete and membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HopRole {
    #[default]
    None,
    Next,
    Prev,
}

enum Branch {
    Improve(Weight),
    Next,
    Prev,
    Nothing,
}

/// Protocol state of one node.
///
/// Per-neighbor tables are flat arrays indexed by `slot * n + t`, where
/// `slot` is the neighbor's position in the sorted neighbor list.
#[derive(Debug, Clone)]
pub struct NodeState<A: Numeric> {
    id: NodeId,
    n: usize,
    neighbors: Vec<NodeId>,
    dist: Vec<Weight>,
    roles: Vec<HopRole>,
    paths: Vec<A::Count>,
    contrib: Vec<A::Real>,
    nbr_paths: Vec<A::Count>,
    nbr_contrib: Vec<A::Real>,
    /// Cached per-neighbor terms of `B[v, t]`; allocated on the first fast receive.
    cached: Vec<A::Real>,
    centrality: A::Real,
    ops: u64,
    messages: u64,
}

impl<A: Numeric> NodeState<A> {
    /// Fresh state of node `id` in a network of `n` nodes.
    pub fn init(id: NodeId, n: usize, neighbors: &[NodeId]) -> Result<Self, ProtocolError> {
        let bad = |reason: String| ProtocolError::InvalidInit { node: id, reason };
        if id >= n {
            return Err(bad(format!("id outside 0..{n}")));
        }
        let mut sorted = neighbors.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != neighbors.len() {
            return Err(bad("duplicate neighbor".into()));
        }
        if sorted.iter().any(|&u| u == id || u >= n) {
            return Err(bad("neighbor set must exclude self and lie in the node range".into()));
        }
        if sorted.is_empty() && n > 1 {
            return Err(bad("isolated node in a network of several nodes".into()));
        }
        let deg = sorted.len();
        let mut dist = vec![Weight::INFINITY; n];
        dist[id] = Weight::ZERO;
        let mut paths = vec![A::Count::zero(); n];
        paths[id] = num_traits::One::one();
        Ok(NodeState {
            id,
            n,
            neighbors: sorted,
            dist,
            roles: vec![HopRole::None; deg * n],
            paths,
            contrib: vec![A::Real::zero(); n],
            nbr_paths: vec![A::Count::zero(); deg * n],
            nbr_contrib: vec![A::Real::zero(); deg * n],
            cached: Vec::new(),
            centrality: A::Real::zero(),
            ops: 0,
            messages: 0,
        })
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self) -> &[NodeId] {
        &self.neighbors
    }

    pub fn slot_of(&self, u: NodeId) -> Option<usize> {
        self.neighbors.binary_search(&u).ok()
    }

    pub fn distance(&self, t: NodeId) -> Weight {
        self.dist[t]
    }

    pub fn distances(&self) -> &[Weight] {
        &self.dist
    }

    pub fn role(&self, u: NodeId, t: NodeId) -> Option<HopRole> {
        self.slot_of(u).map(|s| self.roles[s * self.n + t])
    }

    fn members(&self, t: NodeId, role: HopRole) -> Vec<NodeId> {
        self.neighbors
            .iter()
            .enumerate()
            .filter(|&(s, _)| self.roles[s * self.n + t] == role)
            .map(|(_, &u)| u)
            .collect()
    }

    /// `NH[t]`, ascending.
    pub fn next_hops(&self, t: NodeId) -> Vec<NodeId> {
        self.members(t, HopRole::Next)
    }

    /// `PH[t]`, ascending.
    pub fn prev_hops(&self, t: NodeId) -> Vec<NodeId> {
        self.members(t, HopRole::Prev)
    }

    /// `S[v, t]`.
    pub fn path_count(&self, t: NodeId) -> &A::Count {
        &self.paths[t]
    }

    /// `S[u, t]` as last received from neighbor `u`.
    pub fn neighbor_path_count(&self, u: NodeId, t: NodeId) -> Option<&A::Count> {
        self.slot_of(u).map(|s| &self.nbr_paths[s * self.n + t])
    }

    /// `B[v, t]`.
    pub fn contribution(&self, t: NodeId) -> &A::Real {
        &self.contrib[t]
    }

    /// `B[u, t]` as last received from neighbor `u`.
    pub fn neighbor_contribution(&self, u: NodeId, t: NodeId) -> Option<&A::Real> {
        self.slot_of(u).map(|s| &self.nbr_contrib[s * self.n + t])
    }

    /// Cached term of neighbor `u` in `B[v, t]` (fast mode only).
    pub fn cached_term(&self, u: NodeId, t: NodeId) -> Option<&A::Real> {
        let s = self.slot_of(u)?;
        self.cached.get(s * self.n + t)
    }

    /// Running, unnormalized centrality `C`.
    pub fn centrality(&self) -> &A::Real {
        &self.centrality
    }

    /// Elementary operations spent in receives so far.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    /// Messages received so far.
    pub fn messages(&self) -> u64 {
        self.messages
    }

    /// True while some member of `PH[t]` has reported zero shortest paths,
    /// i.e. `B[v, t]` still lacks one of its terms.
    pub fn contribution_pending(&self, t: NodeId) -> bool {
        (0..self.neighbors.len()).any(|s| {
            let i = s * self.n + t;
            self.roles[i] == HopRole::Prev && self.nbr_paths[i].is_zero()
        })
    }

    pub fn message_for(&self, t: NodeId) -> Message<A> {
        Message {
            target: t,
            distance: self.dist[t],
            path_count: self.paths[t].clone(),
            contribution: self.contrib[t].clone(),
        }
    }

    /// The phase's outgoing messages: one per target, ascending, identical for
    /// every neighbor.
    pub fn build_outbox(&self) -> Outbox<A> {
        Outbox {
            recipients: self.neighbors.clone(),
            messages: (0..self.n).map(|t| self.message_for(t)).collect(),
        }
    }

    fn slot(&self, from: NodeId) -> Result<usize, ProtocolError> {
        self.slot_of(from).ok_or(ProtocolError::UnknownNeighbor {
            node: self.id,
            from,
        })
    }

    pub fn receive(
        &mut self,
        mode: Mode,
        from: NodeId,
        msg: &Message<A>,
        edge_w: Weight,
    ) -> Result<Changes, ProtocolError> {
        let slot = self.slot(from)?;
        self.receive_at(mode, slot, msg, edge_w)
    }

    pub fn receive_bellman_ford(
        &mut self,
        from: NodeId,
        msg: &Message<A>,
        edge_w: Weight,
    ) -> Result<Changes, ProtocolError> {
        self.receive(Mode::BellmanFord, from, msg, edge_w)
    }

    pub fn receive_reference(
        &mut self,
        from: NodeId,
        msg: &Message<A>,
        edge_w: Weight,
    ) -> Result<Changes, ProtocolError> {
        self.receive(Mode::Reference, from, msg, edge_w)
    }

    pub fn receive_fast(
        &mut self,
        from: NodeId,
        msg: &Message<A>,
        edge_w: Weight,
    ) -> Result<Changes, ProtocolError> {
        self.receive(Mode::Fast, from, msg, edge_w)
    }

    pub(crate) fn receive_at(
        &mut self,
        mode: Mode,
        slot: usize,
        msg: &Message<A>,
        edge_w: Weight,
    ) -> Result<Changes, ProtocolError> {
        self.messages += 1;
        match mode {
            Mode::BellmanFord => Ok(self.bellman_ford_at(msg, edge_w)),
            Mode::Reference => self.reference_at(slot, msg, edge_w),
            Mode::Fast => self.fast_at(slot, msg, edge_w),
        }
    }

    /// Compares `d + w` and `d - w` against `D[t]`. An infinite `d` matches
    /// nothing, so silent neighbors never join `NH` or `PH`.
    fn classify(&mut self, t: NodeId, d: Weight, w: Weight) -> Branch {
        if !d.is_finite() {
            self.ops += 1;
            return Branch::Nothing;
        }
        let current = self.dist[t];
        let cand = d + w;
        self.ops += 1;
        if cand < current {
            return Branch::Improve(cand);
        }
        self.ops += 1;
        if cand == current {
            return Branch::Next;
        }
        self.ops += 1;
        if d.checked_sub(w) == Some(current) {
            return Branch::Prev;
        }
        Branch::Nothing
    }

    fn bellman_ford_at(&mut self, msg: &Message<A>, w: Weight) -> Changes {
        let mut ch = Changes::default();
        let t = msg.target;
        let cand = msg.distance + w;
        self.ops += 1;
        if cand < self.dist[t] {
            self.dist[t] = cand;
            self.ops += 1;
            ch.distance = true;
        }
        ch
    }

    fn store_neighbor_values(&mut self, idx: usize, msg: &Message<A>, ch: &mut Changes) {
        self.ops += 2;
        if self.nbr_paths[idx] != msg.path_count {
            self.nbr_paths[idx] = msg.path_count.clone();
            ch.neighbor_view = true;
        }
        if self.nbr_contrib[idx] != msg.contribution {
            self.nbr_contrib[idx] = msg.contribution.clone();
            ch.neighbor_view = true;
        }
    }

    fn overflow(&self, t: NodeId) -> ProtocolError {
        ProtocolError::CountOverflow { node: self.id, target: t }
    }

    fn reference_at(
        &mut self,
        slot: usize,
        msg: &Message<A>,
        w: Weight,
    ) -> Result<Changes, ProtocolError> {
        let mut ch = Changes::default();
        let n = self.n;
        let t = msg.target;
        let idx = slot * n + t;
        let old_role = self.roles[idx];
        let mut role = HopRole::None;
        self.ops += 2;
        match self.classify(t, msg.distance, w) {
            Branch::Improve(c) => {
                self.dist[t] = c;
                self.ops += 1;
                ch.distance = true;
            }
            Branch::Next => {
                role = HopRole::Next;
                self.ops += 1;
            }
            Branch::Prev => {
                role = HopRole::Prev;
                self.ops += 1;
            }
            Branch::Nothing => {}
        }
        if role != old_role {
            ch.hops = true;
            self.roles[idx] = role;
        }
        self.store_neighbor_values(idx, msg, &mut ch);

        let deg = self.neighbors.len();
        if t != self.id {
            let mut sum = A::Count::zero();
            for s in 0..deg {
                let i = s * n + t;
                if self.roles[i] == HopRole::Next {
                    sum = sum.checked_add(&self.nbr_paths[i]).ok_or_else(|| self.overflow(t))?;
                }
            }
            self.ops += deg as u64;
            if sum != self.paths[t] {
                self.paths[t] = sum;
                ch.paths = true;
            }
        }
        let mut acc = A::Real::zero();
        for s in 0..deg {
            let i = s * n + t;
            if self.roles[i] == HopRole::Prev {
                acc = acc + guarded_term::<A>(&num_traits::One::one(), &self.nbr_contrib[i], &self.nbr_paths[i]);
            }
        }
        self.ops += deg as u64;
        let b = A::count_to_real(&self.paths[t]) * acc;
        if b != self.contrib[t] {
            self.contrib[t] = b;
            if t == self.id {
                ch.self_contribution = true;
            } else {
                ch.contribution = true;
                // C is a function of the B row only, so it is recomputed when the row moves.
                let mut c = A::Real::zero();
                for (x, bx) in self.contrib.iter().enumerate() {
                    if x != self.id {
                        c = c + bx.clone();
                    }
                }
                self.ops += n as u64;
                if c != self.centrality {
                    self.centrality = c;
                    ch.centrality = true;
                }
            }
        }
        Ok(ch)
    }

    fn fast_at(
        &mut self,
        slot: usize,
        msg: &Message<A>,
        w: Weight,
    ) -> Result<Changes, ProtocolError> {
        let mut ch = Changes::default();
        let n = self.n;
        let t = msg.target;
        let own = t != self.id;
        let idx = slot * n + t;
        if self.cached.is_empty() {
            self.cached = vec![A::Real::zero(); self.roles.len()];
        }
        let old_b = self.contrib[t].clone();
        let old_paths = self.paths[t].clone();
        if own {
            self.ops += 1;
        }

        let old_role = self.roles[idx];
        self.ops += 1;
        if old_role == HopRole::Next {
            if own {
                self.paths[t] = self.paths[t]
                    .checked_sub(&self.nbr_paths[idx])
                    .ok_or(ProtocolError::CountUnderflow { node: self.id, target: t })?;
            }
            self.ops += 2;
        }
        self.ops += 1;
        let removed = if old_role == HopRole::Prev {
            self.ops += 2;
            Some(self.cached[idx].clone())
        } else {
            None
        };
        self.roles[idx] = HopRole::None;
        self.store_neighbor_values(idx, msg, &mut ch);

        let mut added = None;
        match self.classify(t, msg.distance, w) {
            Branch::Improve(c) => {
                self.dist[t] = c;
                self.ops += 1;
                ch.distance = true;
            }
            Branch::Next => {
                self.roles[idx] = HopRole::Next;
                if own {
                    self.paths[t] = self.paths[t]
                        .checked_add(&self.nbr_paths[idx])
                        .ok_or_else(|| self.overflow(t))?;
                }
                self.ops += 2;
            }
            Branch::Prev => {
                self.roles[idx] = HopRole::Prev;
                let term = guarded_term::<A>(&self.paths[t], &self.nbr_contrib[idx], &self.nbr_paths[idx]);
                if self.cached[idx] != term {
                    self.cached[idx] = term.clone();
                    ch.neighbor_view = true;
                }
                added = Some(term);
                self.ops += 3;
            }
            Branch::Nothing => {}
        }
        if self.roles[idx] != old_role {
            ch.hops = true;
        }
        if self.paths[t] != old_paths {
            ch.paths = true;
        }

        // Removing and re-adding an identical term is skipped so that a fixed
        // point stays bit-identical under floating point.
        let new_b = match (removed, added) {
            (None, None) => None,
            (Some(r), None) => Some(old_b.clone() - r),
            (None, Some(a)) => Some(old_b.clone() + a),
            (Some(r), Some(a)) if r == a => None,
            (Some(r), Some(a)) => Some(old_b.clone() - r + a),
        };
        if let Some(b) = new_b {
            if b != old_b {
                if own {
                    self.centrality = self.centrality.clone() - old_b + b.clone();
                    ch.contribution = true;
                    ch.centrality = true;
                } else {
                    ch.self_contribution = true;
                }
                self.contrib[t] = b;
            }
        }
        if own {
            self.ops += 1;
        }
        Ok(ch)
    }

    /// Feeds every protocol field (own and per-neighbor) into `h`. Roles are
    /// packed eight to a word; reals enter through their `f64` bit pattern.
    pub fn hash_state<H: std::hash::Hasher>(&self, h: &mut H) {
        use std::hash::Hash;
        self.id.hash(h);
        for w in &self.dist {
            w.ticks().hash(h);
        }
        for chunk in self.roles.chunks(8) {
            let mut word = 0u64;
            for (i, r) in chunk.iter().enumerate() {
                word |= (*r as u64) << (8 * i);
            }
            h.write_u64(word);
        }
        self.paths.hash(h);
        self.nbr_paths.hash(h);
        for r in self.contrib.iter().chain(&self.nbr_contrib) {
            A::real_to_f64(r).to_bits().hash(h);
        }
        A::real_to_f64(&self.centrality).to_bits().hash(h);
    }

    /// Compares the node's own fields (D, NH, PH, S[v,·], B[v,·], C).
    ///
    /// Distances, hop sets and counts must match exactly. Reals match exactly
    /// when `rel_tol == 0`, otherwise within the relative tolerance.
    pub fn compare_own_state(&self, other: &Self, rel_tol: f64) -> Result<(), String> {
        if self.id != other.id || self.n != other.n || self.neighbors != other.neighbors {
            return Err("different node identity".into());
        }
        for t in 0..self.n {
            if self.dist[t] != other.dist[t] {
                return Err(format!("node {}: D[{t}] differs", self.id));
            }
            if self.paths[t] != other.paths[t] {
                return Err(format!("node {}: S[{},{t}] differs", self.id, self.id));
            }
            if !reals_match::<A>(&self.contrib[t], &other.contrib[t], rel_tol) {
                return Err(format!(
                    "node {}: B[{},{t}] differs: {:?} vs {:?}",
                    self.id, self.id, self.contrib[t], other.contrib[t]
                ));
            }
        }
        if self.roles != other.roles {
            return Err(format!("node {}: NH/PH differ", self.id));
        }
        if !reals_match::<A>(&self.centrality, &other.centrality, rel_tol) {
            return Err(format!(
                "node {}: C differs: {:?} vs {:?}",
                self.id, self.centrality, other.centrality
            ));
        }
        Ok(())
    }

    /// Debug view with keys `D`, `NH`, `PH`, `S`, `B`, `C`, one entry per
    /// target. Infinite distances render as `"∞"`; with `pending_as_infinity`
    /// so do contributions still waiting for a previous hop's path count.
    pub fn to_debug_json(&self, precision: u32, pending_as_infinity: bool) -> Value {
        let inf = || Value::String("∞".into());
        let d: Vec<Value> = self
            .dist
            .iter()
            .map(|w| if w.is_finite() { json!(w.to_f64(precision)) } else { inf() })
            .collect();
        let nh: Vec<Vec<NodeId>> = (0..self.n).map(|t| self.next_hops(t)).collect();
        let ph: Vec<Vec<NodeId>> = (0..self.n).map(|t| self.prev_hops(t)).collect();
        let s: Vec<Value> = self.paths.iter().map(count_json::<A>).collect();
        let b: Vec<Value> = (0..self.n)
            .map(|t| {
                if pending_as_infinity && self.contribution_pending(t) {
                    inf()
                } else {
                    json!(A::real_to_f64(&self.contrib[t]))
                }
            })
            .collect();
        json!({
            "D": d,
            "NH": nh,
            "PH": ph,
            "S": s,
            "B": b,
            "C": A::real_to_f64(&self.centrality),
        })
    }
}

fn count_json<A: Numeric>(c: &A::Count) -> Value {
    match c.to_u64() {
        Some(v) => json!(v),
        None => Value::String(c.to_string()),
    }
}

fn reals_match<A: Numeric>(a: &A::Real, b: &A::Real, rel_tol: f64) -> bool {
    if a == b {
        return true;
    }
    if rel_tol == 0.0 {
        return false;
    }
    let (x, y) = (A::real_to_f64(a), A::real_to_f64(b));
    (x - y).abs() <= rel_tol * x.abs().max(y.abs()).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Exact, Float};
    use num_bigint::BigUint;
    use num_rational::BigRational;

    const W: Weight = Weight::from_ticks(1000);

    fn msg(t: NodeId, d: u64, s: u64, b: f64) -> Message<Float> {
        Message {
            target: t,
            distance: Weight::from_ticks(d * 1000),
            path_count: s,
            contribution: b,
        }
    }

    /// Node 5 of the six-cycle after four phases, as far as target 3 goes:
    /// D[3]=2, NH[3]={4}, PH[3]={0}, S[5,3]=1, S[0,3] not yet known.
    fn c6_node5_phase4<A: Numeric>(mode: Mode) -> NodeState<A> {
        let mut st = NodeState::<A>::init(5, 6, &[0, 4]).unwrap();
        let m = |d: u64, s: u64| Message::<A> {
            target: 3,
            distance: Weight::from_ticks(d * 1000),
            path_count: count_of::<A>(s),
            contribution: A::Real::zero(),
        };
        st.receive(mode, 4, &m(1, 0), W).unwrap(); // D[3] := 2
        st.receive(mode, 4, &m(1, 1), W).unwrap(); // 4 joins NH, S[5,3] = 1
        st.receive(mode, 0, &m(3, 0), W).unwrap(); // 0 joins PH with unknown count
        st
    }

    fn count_of<A: Numeric>(s: u64) -> A::Count {
        let mut c = A::Count::zero();
        for _ in 0..s {
            c = c.checked_add(&num_traits::One::one()).unwrap();
        }
        c
    }

    #[test]
    fn init_state() {
        let st = NodeState::<Float>::init(5, 6, &[4, 0]).unwrap();
        assert_eq!(st.neighbors(), &[0, 4]);
        assert_eq!(st.distance(5), Weight::ZERO);
        assert!((0..5).all(|t| st.distance(t) == Weight::INFINITY));
        assert_eq!(*st.path_count(5), 1);
        assert_eq!(*st.centrality(), 0.0);
        let p3 = NodeState::<Float>::init(0, 3, &[1]).unwrap();
        assert_eq!((*p3.path_count(0), *p3.path_count(1), *p3.path_count(2)), (1, 0, 0));
    }

    #[test]
    fn init_rejects_bad_neighborhoods() {
        assert!(NodeState::<Float>::init(0, 3, &[]).is_err());
        assert!(NodeState::<Float>::init(0, 3, &[0, 1]).is_err());
        assert!(NodeState::<Float>::init(0, 3, &[1, 1]).is_err());
        assert!(NodeState::<Float>::init(0, 3, &[7]).is_err());
        assert!(NodeState::<Float>::init(0, 1, &[]).is_ok());
    }

    #[test]
    fn fresh_outbox() {
        let st = NodeState::<Float>::init(2, 4, &[1, 3]).unwrap();
        let out = st.build_outbox();
        assert_eq!(out.recipients, vec![1, 3]);
        assert_eq!(out.messages.len(), 4);
        assert_eq!(out.messages[0], Message { target: 0, distance: Weight::INFINITY, path_count: 0, contribution: 0.0 });
        assert_eq!(out.messages[2].distance, Weight::ZERO);
        assert_eq!(out.messages[2].path_count, 1);
    }

    #[test]
    fn golden_update_reference_and_fast() {
        for mode in [Mode::Reference, Mode::Fast] {
            let mut st = c6_node5_phase4::<Float>(mode);
            assert_eq!(st.distance(3), Weight::from_ticks(2000));
            assert_eq!(st.next_hops(3), vec![4]);
            assert_eq!(st.prev_hops(3), vec![0]);
            assert_eq!(*st.path_count(3), 1);
            assert_eq!(*st.contribution(3), 0.0);
            assert!(st.contribution_pending(3));
            let out = st.build_outbox();
            assert_eq!(out.messages[3], msg(3, 2, 1, 0.0));

            let ch = st.receive(mode, 0, &msg(3, 3, 2, 0.0), W).unwrap();
            assert_eq!(st.prev_hops(3), vec![0]);
            assert_eq!(*st.neighbor_path_count(0, 3).unwrap(), 2);
            assert_eq!(*st.path_count(3), 1);
            assert_eq!(*st.contribution(3), 0.5);
            assert_eq!(*st.centrality(), 0.5);
            assert!(ch.contribution && ch.centrality && !ch.hops);
            assert!(!st.contribution_pending(3));

            // The message from node 4 leaves the state unchanged.
            let before = st.clone();
            let ch = st.receive(mode, 4, &msg(3, 1, 1, 1.0), W).unwrap();
            assert!(!ch.own());
            st.compare_own_state(&before, 0.0).unwrap();
        }
    }

    #[test]
    fn golden_update_exact() {
        for mode in [Mode::Reference, Mode::Fast] {
            let mut st = c6_node5_phase4::<Exact>(mode);
            let m = Message::<Exact> {
                target: 3,
                distance: Weight::from_ticks(3000),
                path_count: BigUint::from(2u32),
                contribution: BigRational::zero(),
            };
            st.receive(mode, 0, &m, W).unwrap();
            assert_eq!(*st.contribution(3), BigRational::new(1.into(), 2.into()));
        }
    }

    #[test]
    fn infinite_distance_triggers_nothing() {
        for mode in [Mode::Reference, Mode::Fast, Mode::BellmanFord] {
            let mut st = NodeState::<Float>::init(0, 3, &[1]).unwrap();
            let ch = st.receive(mode, 1, &Message { target: 2, distance: Weight::INFINITY, path_count: 0, contribution: 0.0 }, W).unwrap();
            assert!(!ch.own());
            assert_eq!(st.role(1, 2), Some(HopRole::None));
            assert_eq!(st.distance(2), Weight::INFINITY);
        }
    }

    #[test]
    fn bellman_ford_is_idempotent() {
        let mut st = NodeState::<Float>::init(0, 3, &[1]).unwrap();
        let ch = st.receive_bellman_ford(1, &msg(2, 1, 0, 0.0), W).unwrap();
        assert!(ch.distance);
        assert_eq!(st.distance(2), Weight::from_ticks(2000));
        let ch = st.receive_bellman_ford(1, &msg(2, 1, 0, 0.0), W).unwrap();
        assert!(!ch.any());
        assert_eq!(st.distance(2), Weight::from_ticks(2000));
    }

    #[test]
    fn leaving_previous_hops_subtracts_cached_term() {
        let mut st = c6_node5_phase4::<Float>(Mode::Fast);
        st.receive_fast(0, &msg(3, 3, 2, 1.0), W).unwrap();
        let term = *st.cached_term(0, 3).unwrap();
        assert_eq!(term, 1.0);
        let c_before = *st.centrality();
        // Node 0 now reports a distance that puts it in neither set.
        st.receive_fast(0, &msg(3, 5, 2, 1.0), W).unwrap();
        assert!(st.prev_hops(3).is_empty());
        assert_eq!(*st.centrality(), c_before - term);
    }

    #[test]
    fn unknown_neighbor_is_an_error() {
        let mut st = NodeState::<Float>::init(0, 3, &[1]).unwrap();
        assert_eq!(
            st.receive_fast(2, &msg(2, 0, 1, 0.0), W),
            Err(ProtocolError::UnknownNeighbor { node: 0, from: 2 })
        );
    }

    #[test]
    fn reference_sum_overflow_is_reported() {
        let mut st = NodeState::<Float>::init(0, 4, &[1, 2]).unwrap();
        st.receive_reference(1, &msg(3, 1, u64::MAX, 0.0), W).unwrap();
        st.receive_reference(1, &msg(3, 1, u64::MAX, 0.0), W).unwrap();
        let err = st.receive_reference(2, &msg(3, 1, 1, 0.0), W).unwrap_err();
        assert_eq!(err, ProtocolError::CountOverflow { node: 0, target: 3 });
    }

    #[test]
    fn fast_ops_per_message_are_bounded() {
        let mut st = c6_node5_phase4::<Float>(Mode::Fast);
        let before = (st.ops(), st.messages());
        for _ in 0..10 {
            st.receive_fast(0, &msg(3, 3, 2, 0.0), W).unwrap();
            st.receive_fast(4, &msg(3, 1, 1, 1.0), W).unwrap();
        }
        let per = (st.ops() - before.0) as f64 / (st.messages() - before.1) as f64;
        assert!(per <= 16.0, "{per}");
    }

    #[test]
    fn debug_json_renders_pending_contribution_as_infinity() {
        let st = c6_node5_phase4::<Float>(Mode::Reference);
        let v = st.to_debug_json(3, true);
        assert_eq!(v["D"][3], json!(2.0));
        assert_eq!(v["D"][1], json!("∞"));
        assert_eq!(v["NH"][3], json!([4]));
        assert_eq!(v["PH"][3], json!([0]));
        assert_eq!(v["S"][3], json!(1));
        assert_eq!(v["B"][3], json!("∞"));
        assert_eq!(st.to_debug_json(3, false)["B"][3], json!(0.0));
    }
}

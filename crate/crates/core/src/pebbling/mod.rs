//! Pebbling certificates: legality, cost metrics and explicit constructions.

mod reduction;

pub use reduction::{is_synchronized, reduction_pebbling, sync_normalize, ReductionPebblingError};

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Dag, NodeId};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Any number of new pebbles per round.
    Parallel,
    /// At most one new pebble per round.
    Sequential,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "parallel" => Ok(Mode::Parallel),
            "sequential" => Ok(Mode::Sequential),
            other => Err(format!("unknown pebbling mode `{other}` (expected parallel or sequential)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum PebblingParseError {
    #[error("malformed pebbling json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("node labels are 1-based, found 0 in round {round}")]
    ZeroLabel { round: usize },
}

/// Rounds `P_1..P_t` of a pebbling; `P_0` is the implicit empty set.
///
/// Each round is kept as a strictly increasing id list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pebbling {
    mode: Mode,
    rounds: Vec<Vec<NodeId>>,
}

impl Pebbling {
    pub fn new(mode: Mode, rounds: Vec<Vec<NodeId>>) -> Self {
        let rounds = rounds
            .into_iter()
            .map(|mut r| {
                r.sort_unstable();
                r.dedup();
                r
            })
            .collect();
        Pebbling { mode, rounds }
    }

    /// Convenience constructor from raw labels.
    pub fn from_labels(mode: Mode, rounds: &[&[u32]]) -> Self {
        Pebbling::new(mode, rounds.iter().map(|r| r.iter().map(|&v| NodeId::new(v)).collect()).collect())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn rounds(&self) -> &[Vec<NodeId>] {
        &self.rounds
    }

    /// Round `i` for `1 <= i <= t`.
    pub fn round(&self, i: usize) -> &[NodeId] {
        &self.rounds[i - 1]
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// Rounds as bitmasks over zero-based node indices, when every label fits in 64 bits.
    pub fn masks(&self) -> Option<Vec<u64>> {
        self.rounds
            .iter()
            .map(|r| r.iter().try_fold(0u64, |m, v| (v.index() < 64).then(|| m | (1u64 << v.index()))))
            .collect()
    }

    pub fn from_masks(mode: Mode, masks: &[u64]) -> Self {
        let rounds =
            masks.iter().map(|&m| (0..64).filter(|i| m >> i & 1 == 1).map(NodeId::from_index).collect()).collect();
        Pebbling { mode, rounds }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("pebbling json is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, PebblingParseError> {
        #[derive(Deserialize)]
        struct Raw {
            mode: Mode,
            rounds: Vec<Vec<u32>>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        let mut rounds = Vec::with_capacity(raw.rounds.len());
        for (i, r) in raw.rounds.into_iter().enumerate() {
            if r.contains(&0) {
                return Err(PebblingParseError::ZeroLabel { round: i + 1 });
            }
            rounds.push(r.into_iter().map(NodeId::new).collect());
        }
        Ok(Pebbling::new(raw.mode, rounds))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationReason {
    MissingParent,
    SequentialBound,
    SinkUnpebbled,
    /// A label larger than the graph's node count.
    UnknownNode,
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationReason::MissingParent => "missing_parent",
            ViolationReason::SequentialBound => "sequential_bound",
            ViolationReason::SinkUnpebbled => "sink_unpebbled",
            ViolationReason::UnknownNode => "unknown_node",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// 1-based round; absent for a sink that is never pebbled.
    pub round: Option<usize>,
    pub node: NodeId,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegalityVerdict {
    legal: bool,
    first_violation: Option<Violation>,
}

impl LegalityVerdict {
    fn ok() -> Self {
        LegalityVerdict { legal: true, first_violation: None }
    }

    fn violated(v: Violation) -> Self {
        LegalityVerdict { legal: false, first_violation: Some(v) }
    }

    pub fn is_legal(&self) -> bool {
        self.legal
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.first_violation.as_ref()
    }
}

/// Checks `p` against `g` under the pebbling's own mode.
///
/// Empty rounds are accepted. Violations are reported in round order, and
/// by node label within a round.
pub fn validate(g: &Dag, p: &Pebbling) -> LegalityVerdict {
    let n = g.n();
    let mut prev = vec![false; n];
    let mut cur = vec![false; n];
    let mut ever = vec![false; n];
    for (ri, round) in p.rounds().iter().enumerate() {
        let round_no = ri + 1;
        cur.iter_mut().for_each(|c| *c = false);
        let mut placed = 0usize;
        for &v in round {
            if !g.contains(v) {
                return LegalityVerdict::violated(Violation {
                    round: Some(round_no),
                    node: v,
                    reason: ViolationReason::UnknownNode,
                });
            }
            cur[v.index()] = true;
            if prev[v.index()] {
                continue;
            }
            placed += 1;
            if p.mode() == Mode::Sequential && placed > 1 {
                return LegalityVerdict::violated(Violation {
                    round: Some(round_no),
                    node: v,
                    reason: ViolationReason::SequentialBound,
                });
            }
            if g.parents(v).iter().any(|u| !prev[u.index()]) {
                return LegalityVerdict::violated(Violation {
                    round: Some(round_no),
                    node: v,
                    reason: ViolationReason::MissingParent,
                });
            }
        }
        for &v in round {
            ever[v.index()] = true;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    if let Some(s) = g.sinks().into_iter().find(|s| !ever[s.index()]) {
        return LegalityVerdict::violated(Violation { round: None, node: s, reason: ViolationReason::SinkUnpebbled });
    }
    LegalityVerdict::ok()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    /// Cumulative cost: sum of the round sizes.
    pub cc: u64,
    /// Space-time cost: rounds times the largest round.
    pub st: u64,
    pub t: usize,
    pub max_space: usize,
}

pub fn cost(p: &Pebbling) -> CostReport {
    let cc = p.rounds().iter().map(|r| r.len() as u64).sum();
    let max_space = p.rounds().iter().map(Vec::len).max().unwrap_or(0);
    let t = p.len();
    CostReport { cc, st: t as u64 * max_space as u64, t, max_space }
}

/// Keep-everything pebbling in label order: `P_i = {1, ..., i}`.
pub fn trivial_pebbling(g: &Dag) -> Pebbling {
    let rounds = (1..=g.n()).map(|i| (0..i).map(NodeId::from_index).collect()).collect();
    Pebbling { mode: Mode::Sequential, rounds }
}

/// The 18-round pebbling of the 16-node time/cost counterexample graph
/// ([`crate::reductions::counterexample_dag`]) with cumulative cost 27.
pub fn claim_c1_pebbling() -> Pebbling {
    Pebbling::from_labels(
        Mode::Parallel,
        &[
            &[1],
            &[2],
            &[3],
            &[4],
            &[5],
            &[6],
            &[7],
            &[8],
            &[1, 9],
            &[2, 10],
            &[3, 11],
            &[4, 12],
            &[5, 13],
            &[6, 14],
            &[7, 14],
            &[8, 14],
            &[9, 15],
            &[16],
        ],
    )
}

/// Nodes pebbled at least once, over all rounds.
pub fn touched(p: &Pebbling) -> BTreeSet<NodeId> {
    p.rounds().iter().flatten().copied().collect()
}

/// Sequential pebbling in label order that keeps a pebble only while some
/// child is still to come: `P_i = {i} ∪ {u < i : u has a child > i}`.
pub fn walk_pebbling(g: &Dag) -> Pebbling {
    let rounds = (1..=g.n())
        .map(|i| {
            let mut r: Vec<NodeId> =
                (0..i - 1).map(NodeId::from_index).filter(|&u| g.children(u).iter().any(|c| c.index() >= i)).collect();
            r.push(NodeId::from_index(i - 1));
            r
        })
        .collect();
    Pebbling { mode: Mode::Sequential, rounds }
}

/// A random legal pebbling: each round keeps every pebble with probability
/// 1/2 and places each available node with probability 1/2 (one at most in
/// sequential mode). After `3n` rounds without covering every sink, the
/// trivial pebbling is appended.
pub fn random_legal_pebbling(g: &Dag, mode: Mode, seed: u64) -> Pebbling {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sinks = g.sinks();
    let mut prev = vec![false; n];
    let mut ever = vec![false; n];
    let mut rounds = Vec::new();
    while rounds.len() < 3 * n && sinks.iter().any(|s| !ever[s.index()]) {
        let available: Vec<usize> =
            (0..n).filter(|&v| !prev[v] && g.parents(NodeId::from_index(v)).iter().all(|u| prev[u.index()])).collect();
        let mut cur: Vec<bool> = prev.iter().map(|&held| held && rng.gen_bool(0.5)).collect();
        let mut fresh: Vec<usize> = match mode {
            Mode::Parallel => available.iter().copied().filter(|_| rng.gen_bool(0.5)).collect(),
            Mode::Sequential => available.iter().copied().filter(|_| rng.gen_bool(0.5)).take(1).collect(),
        };
        if fresh.is_empty() && !cur.contains(&true) {
            fresh.push(available[rng.gen_range(0..available.len())]);
        }
        for v in fresh {
            cur[v] = true;
        }
        let round: Vec<NodeId> = (0..n).filter(|&v| cur[v]).map(NodeId::from_index).collect();
        for v in &round {
            ever[v.index()] = true;
        }
        rounds.push(round);
        prev = cur;
    }
    if sinks.iter().any(|s| !ever[s.index()]) {
        rounds.extend(trivial_pebbling(g).rounds);
    }
    Pebbling { mode, rounds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, pyramid};
    use crate::reductions::counterexample_dag;

    #[test]
    fn chain_walk_is_legal() {
        let p = Pebbling::from_labels(Mode::Parallel, &[&[1], &[2], &[3]]);
        assert!(validate(&chain(3), &p).is_legal());
        let c = cost(&p);
        assert_eq!((c.cc, c.st, c.t, c.max_space), (3, 3, 3, 1));
    }

    #[test]
    fn missing_parent_reported() {
        let p = Pebbling::from_labels(Mode::Parallel, &[&[2]]);
        let v = validate(&chain(3), &p);
        assert!(!v.is_legal());
        let first = v.first_violation().unwrap();
        assert_eq!(first.round, Some(1));
        assert_eq!(first.node, NodeId::new(2));
        assert_eq!(first.reason, ViolationReason::MissingParent);
    }

    #[test]
    fn unpebbled_sink_reported() {
        let p = Pebbling::from_labels(Mode::Parallel, &[&[1], &[2]]);
        let v = validate(&chain(3), &p);
        assert_eq!(v.first_violation().unwrap().reason, ViolationReason::SinkUnpebbled);
        assert_eq!(v.first_violation().unwrap().round, None);
    }

    #[test]
    fn sequential_bound_reported() {
        let g = pyramid(2);
        let par = Pebbling::from_labels(Mode::Parallel, &[&[1, 2], &[3]]);
        assert!(validate(&g, &par).is_legal());
        let seq = par.clone().with_mode(Mode::Sequential);
        let v = validate(&g, &seq);
        assert_eq!(v.first_violation().unwrap().reason, ViolationReason::SequentialBound);
        assert_eq!(v.first_violation().unwrap().node, NodeId::new(2));
    }

    #[test]
    fn unknown_node_reported() {
        let p = Pebbling::from_labels(Mode::Parallel, &[&[4]]);
        assert_eq!(validate(&chain(3), &p).first_violation().unwrap().reason, ViolationReason::UnknownNode);
    }

    #[test]
    fn empty_rounds_are_legal() {
        let p = Pebbling::from_labels(Mode::Parallel, &[&[1], &[], &[1], &[2]]);
        assert!(validate(&chain(2), &p).is_legal());
    }

    #[test]
    fn retained_pebble_needs_no_parents() {
        // 2 stays while its parent is dropped
        let p = Pebbling::from_labels(Mode::Parallel, &[&[1], &[2], &[2], &[3]]);
        assert!(validate(&chain(3), &p).is_legal());
    }

    #[test]
    fn keep_all_cost() {
        let p = Pebbling::from_labels(Mode::Parallel, &[&[1], &[1, 2], &[1, 2, 3]]);
        let c = cost(&p);
        assert_eq!((c.cc, c.st), (6, 9));
    }

    #[test]
    fn trivial_pebbling_costs() {
        let t4 = trivial_pebbling(&chain(4));
        assert_eq!(cost(&t4).cc, 10);
        assert!(validate(&chain(4), &t4).is_legal());
        let t5 = trivial_pebbling(&crate::graph::complete(5));
        assert_eq!(cost(&t5).cc, 15);
        let p2 = pyramid(2);
        let tp = trivial_pebbling(&p2);
        assert!(validate(&p2, &tp).is_legal());
        assert_eq!(cost(&tp).cc, 6);
    }

    #[test]
    fn claim_c1_listing() {
        let p = claim_c1_pebbling();
        assert_eq!(p.len(), 18);
        assert_eq!(p.round(9), &[NodeId::new(1), NodeId::new(9)]);
        assert_eq!(p.round(17), &[NodeId::new(9), NodeId::new(15)]);
        assert_eq!(p.round(18), &[NodeId::new(16)]);
        assert!(validate(&counterexample_dag(), &p).is_legal());
        let c = cost(&p);
        assert_eq!((c.cc, c.t), (27, 18));
    }

    #[test]
    fn json_round_trip() {
        let p = claim_c1_pebbling();
        let text = p.to_json();
        assert!(text.starts_with(r#"{"mode":"parallel","rounds":[[1],[2]"#));
        assert_eq!(Pebbling::from_json(&text).unwrap(), p);
        assert!(Pebbling::from_json(r#"{"mode":"parallel","rounds":[[0]]}"#).is_err());
    }

    #[test]
    fn masks_round_trip() {
        let p = claim_c1_pebbling();
        let m = p.masks().unwrap();
        assert_eq!(Pebbling::from_masks(Mode::Parallel, &m), p);
    }

    #[test]
    fn walk_keeps_only_pending_parents() {
        let p = walk_pebbling(&chain(4));
        assert_eq!(
            p.rounds(),
            &[vec![NodeId::new(1)], vec![NodeId::new(2)], vec![NodeId::new(3)], vec![NodeId::new(4)]]
        );
        let g = counterexample_dag();
        let w = walk_pebbling(&g);
        assert!(validate(&g, &w).is_legal());
        assert_eq!(
            w.round(10),
            &[
                NodeId::new(2),
                NodeId::new(3),
                NodeId::new(4),
                NodeId::new(5),
                NodeId::new(8),
                NodeId::new(9),
                NodeId::new(10)
            ]
        );
    }

    #[test]
    fn random_pebblings_are_legal() {
        let g = pyramid(3);
        for seed in 0..50 {
            for mode in [Mode::Parallel, Mode::Sequential] {
                let p = random_legal_pebbling(&g, mode, seed);
                assert!(validate(&g, &p).is_legal(), "{seed} {mode:?}");
                assert!(p.rounds().iter().all(|r| !r.is_empty()));
            }
        }
        assert_eq!(random_legal_pebbling(&g, Mode::Parallel, 3), random_legal_pebbling(&g, Mode::Parallel, 3));
    }
}

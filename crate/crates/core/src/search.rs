//! Exact optimal pebbling search over pebble configurations.
//!
//! A configuration is a pebble set `S` together with the set of sinks that
//! have already been pebbled. One round moves from `S` to some
//! `T ⊆ A(S) = S ∪ {v : parents(v) ⊆ S}` at cost `|T|`.
//!
//! Pruning rules, each safe for optimality:
//! - `T` contains at least one new pebble. A pure discard `T ⊊ S` only
//!   shrinks `A(T)`, so the round after it could have been played directly.
//! - `T` holds only ancestors of unsatisfied sinks. No other node is ever
//!   needed as a parent again.
//! - A state whose pebble set is contained in a cheaper settled state with
//!   the same satisfied sinks (and round, when rounds are bounded) is skipped.
//!   Checked for supersets with one or two extra pebbles.
//! - `cost + h >= incumbent` is cut, where `h` is the larger of the rounds
//!   still needed and the number of nodes that must still be placed.
//!   Both parts are admissible and consistent.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::graph::Dag;
use crate::pebbling::{cost, trivial_pebbling, Mode, Pebbling};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest graph accepted, at most 64.
    pub max_nodes: usize,
    /// Cap on expanded states.
    pub max_states: u64,
    /// Cap on pebbles per round.
    pub max_space: Option<usize>,
    /// Known achievable cost; the search prunes anything more expensive.
    pub upper_bound_seed: Option<u64>,
    pub time_budget: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 24,
            max_states: 20_000_000,
            max_space: None,
            upper_bound_seed: None,
            time_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: u64,
    pub witness: Pebbling,
    pub proven: bool,
    pub expanded_states: u64,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("graph has {n} nodes, above the limit of {max_nodes}")]
    TooLarge { n: usize, max_nodes: usize },
    #[error("search limits reached after {expanded} states; optimum is at least {lower_bound}")]
    Exhausted { expanded: u64, lower_bound: u64, incumbent: Option<u64> },
    #[error("no legal pebbling completes within the round or space limits")]
    Infeasible,
    #[error("no pebbling costs at most the seed bound {seed}")]
    SeedBelowOptimum { seed: u64 },
}

/// Bitmask view of a graph with at most 64 nodes.
struct Masks {
    n: usize,
    parents: Vec<u64>,
    children: Vec<u64>,
    // ancestors including the node itself
    ancestors: Vec<u64>,
    sinks: u64,
}

impl Masks {
    fn new(g: &Dag, limits: &SearchLimits) -> Result<Masks, SearchError> {
        let n = g.n();
        if n > limits.max_nodes.min(64) {
            return Err(SearchError::TooLarge { n, max_nodes: limits.max_nodes.min(64) });
        }
        let mask_of = |ids: &[crate::graph::NodeId]| ids.iter().fold(0u64, |m, v| m | 1 << v.index());
        let parents: Vec<u64> = g.nodes().map(|v| mask_of(g.parents(v))).collect();
        let children: Vec<u64> = g.nodes().map(|v| mask_of(g.children(v))).collect();
        let mut ancestors = vec![0u64; n];
        for v in 0..n {
            let mut a = 1u64 << v;
            for p in bits(parents[v]) {
                a |= ancestors[p];
            }
            ancestors[v] = a;
        }
        Ok(Masks { n, parents, children, ancestors, sinks: mask_of(&g.sinks()) })
    }

    fn useful(&self, sat: u64) -> u64 {
        bits(self.sinks & !sat).fold(0, |m, s| m | self.ancestors[s])
    }

    fn available(&self, s: u64) -> u64 {
        (0..self.n).filter(|&v| s >> v & 1 == 0 && self.parents[v] & !s == 0).fold(0, |m, v| m | 1 << v)
    }

    /// Rounds still needed to pebble every unsatisfied sink starting from `s`.
    fn rounds_lb(&self, s: u64, sat: u64) -> u64 {
        let open = self.sinks & !sat;
        if open == 0 {
            return 0;
        }
        let mut need = vec![0u64; self.n];
        let mut best = 0;
        for v in 0..self.n {
            if s >> v & 1 == 1 {
                continue;
            }
            need[v] = 1 + bits(self.parents[v] & !s).map(|p| need[p]).max().unwrap_or(0);
            if open >> v & 1 == 1 {
                best = best.max(need[v]);
            }
        }
        best
    }

    /// Nodes outside `s` that reach an unsatisfied sink through nodes
    /// outside `s`; each of them must be placed at least once more.
    fn must_place(&self, s: u64, sat: u64) -> u64 {
        let open = self.sinks & !sat;
        let mut marked = 0u64;
        for v in (0..self.n).rev() {
            if s >> v & 1 == 0 && (open >> v & 1 == 1 || self.children[v] & marked != 0) {
                marked |= 1 << v;
            }
        }
        marked.count_ones() as u64
    }

    fn h(&self, s: u64, sat: u64) -> (u64, u64) {
        let rounds = self.rounds_lb(s, sat);
        (rounds.max(self.must_place(s, sat)), rounds)
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

/// Calls `f` on every submask of `m`, the empty one included.
fn for_submasks(m: u64, mut f: impl FnMut(u64)) {
    let mut sub = m;
    loop {
        f(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & m;
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Key {
    mask: u64,
    sat: u64,
    round: u32,
}

const START: Key = Key { mask: 0, sat: 0, round: 0 };

struct Clock {
    start: Instant,
    budget: Option<Duration>,
}

impl Clock {
    fn expired(&self) -> bool {
        self.budget.is_some_and(|b| self.start.elapsed() > b)
    }
}

fn rebuild(parent: &FxHashMap<Key, (Key, u64)>, goal: Key, mode: Mode) -> Pebbling {
    let mut masks = Vec::new();
    let mut k = goal;
    while k != START {
        let (prev, t) = parent[&k];
        masks.push(t);
        k = prev;
    }
    masks.reverse();
    Pebbling::from_masks(mode, &masks)
}

/// Least cumulative cost over all legal pebblings of `g`.
pub fn exact_pcc(g: &Dag, mode: Mode, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
    astar(g, mode, limits, None)
}

/// Least cumulative cost over legal pebblings with at most `t_max` rounds.
pub fn exact_pcc_bounded(
    g: &Dag,
    t_max: usize,
    mode: Mode,
    limits: &SearchLimits,
) -> Result<SearchResult, SearchError> {
    astar(g, mode, limits, Some(t_max as u64))
}

fn astar(g: &Dag, mode: Mode, limits: &SearchLimits, t_max: Option<u64>) -> Result<SearchResult, SearchError> {
    let mk = Masks::new(g, limits)?;
    let clock = Clock { start: Instant::now(), budget: limits.time_budget };
    let space_cap = limits.max_space.unwrap_or(usize::MAX) as u64;

    // The trivial pebbling is a fallback witness when it fits the limits.
    let trivial = trivial_pebbling(g).with_mode(mode);
    let trivial_fits = t_max.is_none_or(|t| g.n() as u64 <= t) && g.n() as u64 <= space_cap;
    let trivial_cc = cost(&trivial).cc;
    let mut witness: Option<(u64, Pebbling)> = trivial_fits.then_some((trivial_cc, trivial));
    // prune f >= bound when a witness of that cost exists, f > bound otherwise
    let (bound, inclusive) = match (limits.upper_bound_seed, &witness) {
        (Some(seed), Some((w, _))) if seed < *w => (seed, true),
        (Some(seed), None) => (seed, true),
        (_, Some((w, _))) => (*w, false),
        (None, None) => (u64::MAX, true),
    };
    let over = |f: u64| if inclusive { f > bound } else { f >= bound };

    let mut best: FxHashMap<Key, u64> = FxHashMap::default();
    let mut parent: FxHashMap<Key, (Key, u64)> = FxHashMap::default();
    let mut closed: FxHashSet<Key> = FxHashSet::default();
    let mut heap = BinaryHeap::new();
    let (h0, r0) = mk.h(0, 0);
    if t_max.is_some_and(|t| r0 > t) {
        return Err(SearchError::Infeasible);
    }
    best.insert(START, 0);
    heap.push(Reverse((h0, START, 0u64)));
    let mut expanded = 0u64;
    let mut lower_bound = h0;

    while let Some(Reverse((f, key, gcost))) = heap.pop() {
        if best.get(&key).is_some_and(|&b| b < gcost) || closed.contains(&key) {
            continue;
        }
        lower_bound = lower_bound.max(f);
        if key.sat == mk.sinks {
            let p = rebuild(&parent, key, mode);
            return Ok(SearchResult { optimum: gcost, witness: p, proven: true, expanded_states: expanded });
        }
        if dominated(&mk, &best, &closed, key, gcost) {
            continue;
        }
        closed.insert(key);
        expanded += 1;
        if expanded > limits.max_states || (expanded.is_multiple_of(1024) && clock.expired()) {
            return Err(SearchError::Exhausted {
                expanded,
                lower_bound,
                incumbent: witness.as_ref().map(|w| w.0).or(limits.upper_bound_seed),
            });
        }

        let useful = mk.useful(key.sat);
        let keep = key.mask & useful;
        let fresh = mk.available(key.mask) & useful;
        let next_round = if t_max.is_some() { key.round + 1 } else { 0 };
        let mut expand = |t: u64| {
            let size = t.count_ones() as u64;
            if size > space_cap {
                return;
            }
            let sat = key.sat | (t & mk.sinks);
            let next = Key { mask: t & mk.useful(sat), sat, round: next_round };
            let g2 = gcost + size;
            if best.get(&next).is_some_and(|&b| b <= g2) {
                return;
            }
            let (h, rounds) = mk.h(next.mask, sat);
            if t_max.is_some_and(|tm| next_round as u64 + rounds > tm) || over(g2 + h) {
                return;
            }
            best.insert(next, g2);
            parent.insert(next, (key, t));
            heap.push(Reverse((g2 + h, next, g2)));
        };
        match mode {
            Mode::Parallel => for_submasks(fresh, |new| {
                if new != 0 {
                    for_submasks(keep, |kept| expand(kept | new));
                }
            }),
            Mode::Sequential => {
                for v in bits(fresh) {
                    for_submasks(keep, |kept| expand(kept | 1 << v));
                }
            }
        }
    }

    match witness.take() {
        Some((cc, p)) if !inclusive => {
            Ok(SearchResult { optimum: cc, witness: p, proven: true, expanded_states: expanded })
        }
        _ => match limits.upper_bound_seed {
            Some(seed) => Err(SearchError::SeedBelowOptimum { seed }),
            None => Err(SearchError::Infeasible),
        },
    }
}

/// A settled state with one or two more pebbles, the same satisfied sinks
/// and round, reached no more expensively.
fn dominated(mk: &Masks, best: &FxHashMap<Key, u64>, closed: &FxHashSet<Key>, key: Key, g: u64) -> bool {
    let extra: Vec<usize> = bits(mk.useful(key.sat) & !key.mask).collect();
    let beats = |mask: u64| {
        let k = Key { mask, ..key };
        closed.contains(&k) && best.get(&k).is_some_and(|&b| b <= g)
    };
    for (i, &a) in extra.iter().enumerate() {
        let one = key.mask | 1 << a;
        if beats(one) {
            return true;
        }
        if extra[i + 1..].iter().any(|&b| beats(one | 1 << b)) {
            return true;
        }
    }
    false
}

/// Fewest rounds to satisfy every sink with at most `cap` pebbles per round.
fn min_rounds(
    mk: &Masks,
    mode: Mode,
    cap: u64,
    limits: &SearchLimits,
    clock: &Clock,
    expanded: &mut u64,
) -> Result<Option<Pebbling>, SearchError> {
    let mut seen: FxHashSet<Key> = FxHashSet::default();
    let mut parent: FxHashMap<Key, (Key, u64)> = FxHashMap::default();
    let mut frontier = vec![START];
    seen.insert(START);
    let mut depth = 0u64;
    while !frontier.is_empty() {
        depth += 1;
        let mut next_frontier = Vec::new();
        for key in frontier {
            *expanded += 1;
            if *expanded > limits.max_states || ((*expanded).is_multiple_of(1024) && clock.expired()) {
                return Err(SearchError::Exhausted { expanded: *expanded, lower_bound: depth, incumbent: None });
            }
            let useful = mk.useful(key.sat);
            let keep = key.mask & useful;
            let fresh = mk.available(key.mask) & useful;
            let mut goal = None;
            // only maximal rounds: a superset reaches everything a subset does
            let mut visit = |t: u64| {
                if goal.is_some() {
                    return;
                }
                let sat = key.sat | (t & mk.sinks);
                let next = Key { mask: t & mk.useful(sat), sat, round: 0 };
                if seen.insert(next) {
                    parent.insert(next, (key, t));
                    if sat == mk.sinks {
                        goal = Some(next);
                    } else {
                        next_frontier.push(next);
                    }
                }
            };
            match mode {
                Mode::Parallel => {
                    let all = keep | fresh;
                    if all.count_ones() as u64 <= cap {
                        if fresh != 0 {
                            visit(all);
                        }
                    } else {
                        for_submasks(all, |t| {
                            if t.count_ones() as u64 == cap && t & fresh != 0 {
                                visit(t);
                            }
                        });
                    }
                }
                Mode::Sequential => {
                    if cap == 0 {
                        continue;
                    }
                    let room = (cap - 1).min(keep.count_ones() as u64);
                    for v in bits(fresh) {
                        for_submasks(keep, |kept| {
                            if kept.count_ones() as u64 == room {
                                visit(kept | 1 << v);
                            }
                        });
                    }
                }
            }
            if let Some(g) = goal {
                return Ok(Some(rebuild(&parent, g, mode)));
            }
        }
        frontier = next_frontier;
    }
    Ok(None)
}

/// Least space-time cost `t * max|P_i|`, minimised over space caps.
pub fn exact_min_st(g: &Dag, mode: Mode, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
    let mk = Masks::new(g, limits)?;
    let clock = Clock { start: Instant::now(), budget: limits.time_budget };
    let depth = mk.rounds_lb(0, 0);
    let top = limits.max_space.unwrap_or(mk.n).min(mk.n) as u64;
    let mut expanded = 0;
    let mut best: Option<(u64, Pebbling)> = None;
    for cap in 1..=top {
        if best.as_ref().is_some_and(|(b, _)| cap * depth >= *b) {
            break;
        }
        if let Some(p) = min_rounds(&mk, mode, cap, limits, &clock, &mut expanded)? {
            let st = cost(&p).st;
            if best.as_ref().is_none_or(|(b, _)| st < *b) {
                best = Some((st, p));
            }
        }
    }
    let (optimum, witness) = best.ok_or(SearchError::Infeasible)?;
    Ok(SearchResult { optimum, witness, proven: true, expanded_states: expanded })
}

/// Fewest pebbles per round with which every sink can be pebbled.
pub fn exact_min_space(g: &Dag, mode: Mode, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
    let mk = Masks::new(g, limits)?;
    let clock = Clock { start: Instant::now(), budget: limits.time_budget };
    let top = limits.max_space.unwrap_or(mk.n).min(mk.n) as u64;
    let mut expanded = 0;
    for cap in 1..=top {
        if let Some(p) = min_rounds(&mk, mode, cap, limits, &clock, &mut expanded)? {
            return Ok(SearchResult { optimum: cap, witness: p, proven: true, expanded_states: expanded });
        }
    }
    Err(SearchError::Infeasible)
}

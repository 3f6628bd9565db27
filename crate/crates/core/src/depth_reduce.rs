//! `(e, d)`-reducibility: does removing at most `e` nodes leave no path
//! longer than `d`?
//!
//! The exact search deepens on `|S|`. At each step it takes a longest
//! remaining path; any valid `S` must hit its first `limit + 1` nodes, so
//! the search branches on those. A branch is cut when the greedy count of
//! node-disjoint over-long windows exceeds the remaining budget.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Dag, DepthConvention, NodeId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducibilityResult {
    pub reducible: bool,
    pub witness_set: Option<Vec<NodeId>>,
    /// Depth of `G - S` for the witness, or of `G` when not reducible.
    pub residual_depth: usize,
    pub convention: DepthConvention,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("reducibility search stopped after {steps} steps")]
    TooLarge { steps: u64 },
}

/// Node list of a longest path in `G` minus the flagged nodes, if any node remains.
fn longest_path(g: &Dag, removed: &[bool]) -> Vec<usize> {
    let n = g.n();
    let mut len = vec![0usize; n];
    let mut prev = vec![usize::MAX; n];
    let mut end = None;
    for v in 0..n {
        if removed[v] {
            continue;
        }
        len[v] = 1;
        for p in g.parents(NodeId::from_index(v)) {
            let p = p.index();
            if !removed[p] && len[p] + 1 > len[v] {
                len[v] = len[p] + 1;
                prev[v] = p;
            }
        }
        if end.is_none_or(|e: usize| len[v] > len[e]) {
            end = Some(v);
        }
    }
    let mut path = Vec::new();
    let mut cur = end;
    while let Some(v) = cur {
        path.push(v);
        cur = (prev[v] != usize::MAX).then_some(prev[v]);
    }
    path.reverse();
    path
}

/// Greedy count of node-disjoint paths with more than `limit` nodes.
fn disjoint_long_paths(g: &Dag, removed: &[bool], limit: usize, stop_after: usize) -> usize {
    let mut gone = removed.to_vec();
    let mut count = 0;
    while count <= stop_after {
        let path = longest_path(g, &gone);
        if path.len() <= limit {
            break;
        }
        for &v in &path[..=limit] {
            gone[v] = true;
        }
        count += 1;
    }
    count
}

struct Deepening<'a> {
    g: &'a Dag,
    limit: usize,
    removed: Vec<bool>,
    chosen: Vec<usize>,
    steps: u64,
    max_steps: u64,
}

impl Deepening<'_> {
    fn search(&mut self, budget: usize) -> Result<bool, ReduceError> {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Err(ReduceError::TooLarge { steps: self.steps });
        }
        let path = longest_path(self.g, &self.removed);
        if path.len() <= self.limit {
            return Ok(true);
        }
        if budget == 0 || disjoint_long_paths(self.g, &self.removed, self.limit, budget) > budget {
            return Ok(false);
        }
        for &v in &path[..=self.limit] {
            self.removed[v] = true;
            self.chosen.push(v);
            if self.search(budget - 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            self.removed[v] = false;
        }
        Ok(false)
    }
}

/// Exact decision. When reducible, the witness has minimum size.
pub fn is_reducible(
    g: &Dag,
    e: usize,
    d: usize,
    conv: DepthConvention,
    max_steps: u64,
) -> Result<ReducibilityResult, ReduceError> {
    let limit = conv.node_limit(d);
    let mut dfs = Deepening { g, limit, removed: vec![false; g.n()], chosen: Vec::new(), steps: 0, max_steps };
    for budget in 0..=e.min(g.n()) {
        if dfs.search(budget)? {
            let mut set: Vec<NodeId> = dfs.chosen.iter().map(|&v| NodeId::from_index(v)).collect();
            set.sort();
            let residual_depth = residual_depth(g, &set, conv);
            return Ok(ReducibilityResult {
                reducible: true,
                witness_set: Some(set),
                residual_depth,
                convention: conv,
            });
        }
    }
    Ok(ReducibilityResult { reducible: false, witness_set: None, residual_depth: g.depth(conv), convention: conv })
}

/// Smallest `e` for which `g` is `(e, d)`-reducible, with a witness.
pub fn min_reducing_set(
    g: &Dag,
    d: usize,
    conv: DepthConvention,
    max_steps: u64,
) -> Result<(usize, Vec<NodeId>), ReduceError> {
    let r = is_reducible(g, g.n(), d, conv, max_steps)?;
    let set = r.witness_set.expect("removing every node always works");
    Ok((set.len(), set))
}

/// Repeatedly removes the node lying on the most maximum-length paths
/// until the depth is at most `d`. Ties go to the node on the most paths
/// longer than the limit, then to the smallest id.
pub fn greedy_reduce(g: &Dag, d: usize, conv: DepthConvention) -> Vec<NodeId> {
    let n = g.n();
    let limit = conv.node_limit(d);
    let mut removed = vec![false; n];
    let mut out = Vec::new();
    loop {
        let (to_len, to_cnt) = path_counts(g, &removed, false);
        let (from_len, from_cnt) = path_counts(g, &removed, true);
        let longest = (0..n).filter(|&v| !removed[v]).map(|v| to_len[v]).max().unwrap_or(0);
        if longest <= limit {
            break;
        }
        let to_hist = length_histogram(g, &removed, false, limit + 1);
        let from_hist = length_histogram(g, &removed, true, limit + 1);
        let long_through = |v: usize| {
            let mut total = 0u128;
            for (a, &x) in to_hist[v].iter().enumerate() {
                for (b, &y) in from_hist[v].iter().enumerate() {
                    // bucket i holds paths of i + 1 nodes, the last bucket at least that
                    if a + b + 1 > limit {
                        total = total.saturating_add(x.saturating_mul(y));
                    }
                }
            }
            total
        };
        let pick = (0..n)
            .filter(|&v| !removed[v] && to_len[v] + from_len[v] - 1 == longest)
            .map(|v| (to_cnt[v].saturating_mul(from_cnt[v]), long_through(v), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(b.2.cmp(&a.2)))
            .expect("a longest path has nodes")
            .2;
        removed[pick] = true;
        out.push(NodeId::from_index(pick));
    }
    out.sort();
    out
}

/// Per node: node count of the longest path ending there (or starting
/// there, when `reverse`), and how many such longest paths exist.
fn path_counts(g: &Dag, removed: &[bool], reverse: bool) -> (Vec<usize>, Vec<u128>) {
    let n = g.n();
    let mut len = vec![0usize; n];
    let mut cnt = vec![0u128; n];
    for v in order(n, reverse) {
        if removed[v] {
            continue;
        }
        let (mut l, mut c) = (1usize, 1u128);
        for u in neighbours(g, v, reverse).filter(|&u| !removed[u]) {
            if len[u] + 1 > l {
                l = len[u] + 1;
                c = cnt[u];
            } else if len[u] + 1 == l {
                c = c.saturating_add(cnt[u]);
            }
        }
        len[v] = l;
        cnt[v] = c;
    }
    (len, cnt)
}

/// `hist[v][i]`: paths ending at `v` (starting, when `reverse`) with
/// `i + 1` nodes; the last of the `cap` buckets counts every longer path too.
fn length_histogram(g: &Dag, removed: &[bool], reverse: bool, cap: usize) -> Vec<Vec<u128>> {
    let n = g.n();
    let mut hist = vec![vec![0u128; cap]; n];
    for v in order(n, reverse) {
        if removed[v] {
            continue;
        }
        let mut h = vec![0u128; cap];
        h[0] = 1;
        for u in neighbours(g, v, reverse).filter(|&u| !removed[u]) {
            for (i, &x) in hist[u].iter().enumerate() {
                let j = (i + 1).min(cap - 1);
                h[j] = h[j].saturating_add(x);
            }
        }
        hist[v] = h;
    }
    hist
}

fn order(n: usize, reverse: bool) -> Box<dyn Iterator<Item = usize>> {
    if reverse {
        Box::new((0..n).rev())
    } else {
        Box::new(0..n)
    }
}

fn neighbours(g: &Dag, v: usize, reverse: bool) -> impl Iterator<Item = usize> + '_ {
    let id = NodeId::from_index(v);
    let nbrs = if reverse { g.children(id) } else { g.parents(id) };
    nbrs.iter().map(|u| u.index())
}

fn residual_depth(g: &Dag, s: &[NodeId], conv: DepthConvention) -> usize {
    let mut removed = vec![false; g.n()];
    for v in s {
        removed[v.index()] = true;
    }
    conv.from_node_depth(g.depth_nodes_without(&removed))
}

/// Recomputes the depth of `G - S` and compares it with `d`.
pub fn verify_set(g: &Dag, s: &[NodeId], d: usize, conv: DepthConvention) -> bool {
    s.iter().all(|v| g.contains(*v)) && residual_depth(g, s, conv) <= d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, complete};

    const STEPS: u64 = 1_000_000;
    const NODES: DepthConvention = DepthConvention::Nodes;

    #[test]
    fn chain_middle_cut() {
        let r = is_reducible(&chain(5), 1, 2, NODES, STEPS).unwrap();
        assert!(r.reducible);
        assert_eq!(r.witness_set, Some(vec![NodeId::new(3)]));
        assert_eq!(r.residual_depth, 2);
    }

    #[test]
    fn minimum_sets() {
        assert_eq!(min_reducing_set(&chain(9), 2, NODES, STEPS).unwrap().0, 3);
        assert_eq!(min_reducing_set(&complete(4), 1, NODES, STEPS).unwrap().0, 3);
        assert_eq!(min_reducing_set(&chain(6), 6, NODES, STEPS).unwrap().0, 0);
    }

    #[test]
    fn zero_budget_and_full_removal() {
        let g = chain(4);
        assert!(!is_reducible(&g, 0, 3, NODES, STEPS).unwrap().reducible);
        assert!(is_reducible(&g, 0, 4, NODES, STEPS).unwrap().reducible);
        let all = is_reducible(&g, 4, 0, NODES, STEPS).unwrap();
        assert_eq!(all.witness_set.unwrap().len(), 4);
        assert!(verify_set(&g, &g.nodes().collect::<Vec<_>>(), 0, NODES));
    }

    #[test]
    fn edge_convention_allows_one_more_node() {
        // chain(5) minus node 3 has paths of one edge
        assert!(verify_set(&chain(5), &[NodeId::new(3)], 1, DepthConvention::Edges));
        assert!(!verify_set(&chain(5), &[], 2, NODES));
    }

    #[test]
    fn greedy_is_valid() {
        let s = greedy_reduce(&chain(5), 2, NODES);
        assert!(s.len() <= 2 && verify_set(&chain(5), &s, 2, NODES));
        assert!(greedy_reduce(&chain(3), 3, NODES).is_empty());
    }

    #[test]
    fn step_cap() {
        assert_eq!(is_reducible(&chain(9), 3, 2, NODES, 2), Err(ReduceError::TooLarge { steps: 3 }));
    }
}

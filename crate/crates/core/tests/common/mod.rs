//! Strategies and brute-force oracles shared by the property tests.
//! The oracles are deliberately naive and share no code with the library.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use pebble_core::graph::Dag;
use proptest::prelude::*;

/// A DAG on `1..=n` whose edges are an arbitrary subset of the pairs `u < v`.
pub fn dag(max_n: usize) -> impl Strategy<Value = Dag> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 2..=n as u32 {
                for u in 1..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Dag::new(n, edges).unwrap()
        })
    })
}

pub struct Bits {
    pub n: usize,
    pub parents: Vec<u64>,
    pub sinks: u64,
}

impl Bits {
    pub fn of(g: &Dag) -> Bits {
        let parents = g.nodes().map(|v| g.parents(v).iter().fold(0, |m, p| m | 1 << p.index())).collect();
        let sinks = g.sinks().iter().fold(0, |m, s| m | 1 << s.index());
        Bits { n: g.n(), parents, sinks }
    }

    pub fn available(&self, s: u64) -> u64 {
        (0..self.n).filter(|&v| self.parents[v] & !s == 0).fold(0, |m, v| m | 1 << v)
    }
}

/// Every subset of `mask`, including 0 and `mask` itself.
pub fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut cur = Some(mask);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

/// Cheapest pebbling by plain Dijkstra over (pebbles, satisfied sinks) with
/// every subset of the available nodes as a move. With `t_max`, the round
/// count joins the state.
pub fn naive_pcc(g: &Dag, sequential: bool, t_max: Option<usize>) -> Option<u64> {
    let b = Bits::of(g);
    let mut dist: HashMap<(u64, u64, usize), u64> = HashMap::new();
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0u64, 0u64, 0usize)));
    dist.insert((0, 0, 0), 0);
    while let Some(Reverse((d, s, sat, r))) = heap.pop() {
        if sat == b.sinks {
            return Some(d);
        }
        if dist.get(&(s, sat, r)).is_some_and(|&best| best < d) {
            continue;
        }
        if t_max.is_some_and(|t| r >= t) {
            continue;
        }
        let options = s | b.available(s);
        for t in subsets(options) {
            if sequential && (t & !s).count_ones() > 1 {
                continue;
            }
            let nd = d + t.count_ones() as u64;
            let nsat = sat | (t & b.sinks);
            let nr = if t_max.is_some() { r + 1 } else { 0 };
            let key = (t, nsat, nr);
            if dist.get(&key).is_none_or(|&old| nd < old) {
                dist.insert(key, nd);
                heap.push(Reverse((nd, t, nsat, nr)));
            }
        }
    }
    None
}

/// Longest path, counted in nodes, after deleting the nodes in `removed`.
pub fn depth_without(g: &Dag, removed: u64) -> usize {
    let mut len = vec![0usize; g.n()];
    let mut best = 0;
    for v in g.nodes() {
        if removed >> v.index() & 1 == 1 {
            continue;
        }
        let l = 1 + g
            .parents(v)
            .iter()
            .filter(|p| removed >> p.index() & 1 == 0)
            .map(|p| len[p.index()])
            .max()
            .unwrap_or(0);
        len[v.index()] = l;
        best = best.max(l);
    }
    best
}

/// Smallest set whose removal leaves no path of more than `limit` nodes.
pub fn naive_min_reducing(g: &Dag, limit: usize) -> usize {
    (0u64..1 << g.n()).filter(|&s| depth_without(g, s) <= limit).map(|s| s.count_ones() as usize).min().unwrap()
}

/// Whether the difference equations `x_b - x_a = c` have a common solution,
/// by propagating values over each connected component.
pub fn naive_consistent(n_vars: usize, eqs: &[(usize, u64, usize)]) -> bool {
    let mut val: Vec<Option<i64>> = vec![None; n_vars + 1];
    loop {
        let start = (1..=n_vars).find(|&v| val[v].is_none() && eqs.iter().any(|&(a, _, b)| a == v || b == v));
        let Some(start) = start else { return true };
        val[start] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, c, b) in eqs {
                match (val[a], val[b]) {
                    (Some(x), None) => {
                        val[b] = Some(x + c as i64);
                        changed = true;
                    }
                    (None, Some(y)) => {
                        val[a] = Some(y - c as i64);
                        changed = true;
                    }
                    (Some(x), Some(y)) if y - x != c as i64 => return false,
                    _ => {}
                }
            }
        }
    }
}

/// Tries every map from equations to `m` groups.
pub fn naive_b2lc(n_vars: usize, m: usize, eqs: &[(usize, u64, usize)]) -> bool {
    let k = eqs.len();
    let mut assign = vec![0usize; k];
    loop {
        let ok = (0..m).all(|gr| {
            let group: Vec<_> = (0..k).filter(|&i| assign[i] == gr).map(|i| eqs[i]).collect();
            naive_consistent(n_vars, &group)
        });
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            assign[i] += 1;
            if assign[i] < m {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// Whether the multiset splits into triples of equal sum, by trying every
/// triple that contains the first unused element.
pub fn naive_3partition(elements: &[u64], n: usize) -> bool {
    fn rec(left: &mut Vec<u64>, target: u64) -> bool {
        if left.is_empty() {
            return true;
        }
        let a = left.remove(0);
        for i in 0..left.len() {
            for j in i + 1..left.len() {
                if a + left[i] + left[j] == target {
                    let (x, y) = (left[i], left[j]);
                    left.remove(j);
                    left.remove(i);
                    if rec(left, target) {
                        return true;
                    }
                    left.insert(i, x);
                    left.insert(j, y);
                }
            }
        }
        left.insert(0, a);
        false
    }
    let total: u64 = elements.iter().sum();
    total.is_multiple_of(n as u64) && rec(&mut elements.to_vec(), total / n as u64)
}

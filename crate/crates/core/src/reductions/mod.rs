//! Instance and graph constructions: 3-PARTITION to B2LC, B2LC to its
//! pebbling gadget graph, vertex cover to depth reducibility, indegree
//! reduction, chain appending, and the 16-node counterexample.

mod layout;
mod vc;

pub use layout::{b2lc_to_graph, default_tau, yes_instance_bound, Gadget, LayoutError, ReductionLayout};
pub use vc::{min_vertex_cover, vc_to_reducible, UndirectedGraph, VcReduction};

use thiserror::Error;

use crate::b2lc::{B2lcInstance, Equation, ThreePartitionInstance};
use crate::graph::{Dag, NodeId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionWarning {
    /// `n` does not divide `T`. The source instance is a no instance; every
    /// element was multiplied by `n` before building the equations, which
    /// keeps the answer and makes `T/n` integral.
    NotDivisible { n: usize, total: u64 },
}

/// Equations over `x_1..x_{3n+1}`: `n` rows of `3n` chain equations whose
/// offsets are the sorted elements, then `0, T, 2T, .., (n-2)T`, followed by
/// the `n` closing equations `x_1 + T/n + 3(i-1)(n-2)T = x_{3n+1}`. Budget `m = n`.
pub fn threepartition_to_b2lc(p: &ThreePartitionInstance) -> (B2lcInstance, Vec<ReductionWarning>) {
    let n = p.n();
    let mut warnings = Vec::new();
    let mut s: Vec<u64> = p.elements().to_vec();
    s.sort_unstable();
    let mut total: u64 = s.iter().sum();
    if !total.is_multiple_of(n as u64) {
        warnings.push(ReductionWarning::NotDivisible { n, total });
        s.iter_mut().for_each(|x| *x *= n as u64);
        total *= n as u64;
    }
    let len = 3 * n;
    let mut equations = Vec::with_capacity(3 * n * n + n);
    for (i, &x) in s.iter().enumerate() {
        equations.push(Equation::new(i + 1, x, i + 2));
    }
    for j in 0..n.saturating_sub(1) as u64 {
        for i in 1..=len {
            equations.push(Equation::new(i, j * total, i + 1));
        }
    }
    let n64 = n as u64;
    for i in 1..=n64 {
        let c = total / n64 + 3 * (i - 1) * (n64.saturating_sub(2)) * total;
        equations.push(Equation::new(1, c, len + 1));
    }
    let inst = B2lcInstance::new(len + 1, n, equations).expect("reduction output is well formed");
    (inst, warnings)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphOpError {
    #[error("graph has {count} sinks; appending a chain needs exactly one")]
    AmbiguousSink { count: usize },
    #[error("appended chain length must be at least 1")]
    ZeroLength,
    #[error("indegree bound must be at least 2, got {0}")]
    DeltaTooSmall(usize),
}

/// Sixteen nodes on a line, plus `(i, i+9)` for `i <= 5` and `(i, i+7)` for `i` in `{8, 9}`.
pub fn counterexample_dag() -> Dag {
    let mut edges: Vec<(u32, u32)> = (1..16).map(|i| (i, i + 1)).collect();
    edges.extend((1..=5).map(|i| (i, i + 9)));
    edges.extend((8..=9).map(|i| (i, i + 7)));
    Dag::new(16, edges).expect("counterexample is well formed")
}

/// `300n^3 + 6n^2 + 40n + 100`, the chain length appended in the
/// space-time hardness construction.
pub fn hardness_chain_length(n: u64) -> u64 {
    300 * n.pow(3) + 6 * n.pow(2) + 40 * n + 100
}

/// Hangs a path of `length` fresh nodes below the unique sink.
pub fn append_chain(g: &Dag, length: usize) -> Result<Dag, GraphOpError> {
    if length == 0 {
        return Err(GraphOpError::ZeroLength);
    }
    let sinks = g.sinks();
    if sinks.len() != 1 {
        return Err(GraphOpError::AmbiguousSink { count: sinks.len() });
    }
    let n = g.n() as u32;
    let mut edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (u.get(), v.get())).collect();
    edges.push((sinks[0].get(), n + 1));
    edges.extend((n + 1..n + length as u32).map(|i| (i, i + 1)));
    Ok(Dag::new(g.n() + length, edges).expect("appended chain is well formed"))
}

/// Replaces the in-edges of every node with more than `delta` parents by
/// an in-tree of arity `delta`. Returns the new graph and, for each
/// original node, its id in the new graph.
pub fn reduce_indegree_with_map(g: &Dag, delta: usize) -> Result<(Dag, Vec<NodeId>), GraphOpError> {
    if delta < 2 {
        return Err(GraphOpError::DeltaTooSmall(delta));
    }
    let mut map = Vec::with_capacity(g.n());
    let mut edges = Vec::new();
    let mut next = 1u32;
    for v in g.nodes() {
        let mut inputs: std::collections::VecDeque<u32> =
            g.parents(v).iter().map(|p| map[p.index()]).map(|p: NodeId| p.get()).collect();
        // each merge turns `take` inputs into one; the queue keeps the tree balanced
        while inputs.len() > delta {
            let take = delta.min(inputs.len() - delta + 1);
            let node = next;
            next += 1;
            for _ in 0..take {
                edges.push((inputs.pop_front().unwrap(), node));
            }
            inputs.push_back(node);
        }
        let id = next;
        next += 1;
        edges.extend(inputs.into_iter().map(|p| (p, id)));
        map.push(NodeId::new(id));
    }
    let dag = Dag::new(next as usize - 1, edges).expect("in-trees precede their root");
    Ok((dag, map))
}

pub fn reduce_indegree(g: &Dag, delta: usize) -> Result<Dag, GraphOpError> {
    reduce_indegree_with_map(g, delta).map(|(d, _)| d)
}

//! Directed acyclic graphs whose labels `1..=n` are a topological order.
//!
//! Every other module in the crate refers to nodes through [`NodeId`] and
//! reads structure from an immutable [`Dag`]. Transforms never mutate a
//! graph in place; they build a new one.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A 1-based node label.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(u32);

impl NodeId {
    /// Panics on 0; labels start at 1.
    pub fn new(label: u32) -> Self {
        assert!(label >= 1, "node labels are 1-based");
        NodeId(label)
    }

    pub fn from_index(index: usize) -> Self {
        NodeId(index as u32 + 1)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Zero-based position, for indexing per-node vectors and bitmasks.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether a path's length counts its nodes or its edges.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthConvention {
    Nodes,
    Edges,
}

impl DepthConvention {
    /// Converts a depth bound in this convention into the equivalent bound
    /// on the number of nodes of a path.
    pub fn node_limit(self, d: usize) -> usize {
        match self {
            DepthConvention::Nodes => d,
            DepthConvention::Edges => d + 1,
        }
    }

    /// Converts a node-count depth into this convention. The empty graph
    /// has depth 0 under both.
    pub fn from_node_depth(self, nodes: usize) -> usize {
        match self {
            DepthConvention::Nodes => nodes,
            DepthConvention::Edges => nodes.saturating_sub(1),
        }
    }
}

impl std::str::FromStr for DepthConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nodes" => Ok(DepthConvention::Nodes),
            "edges" => Ok(DepthConvention::Edges),
            other => Err(format!("unknown depth convention `{other}` (expected nodes or edges)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("a graph needs at least one node")]
    Empty,
    #[error("edge ({u},{v}) does not go forward in label order")]
    BackwardEdge { u: u32, v: u32 },
    #[error("node {node} is outside 1..={n}")]
    OutOfRange { node: u32, n: usize },
    #[error("malformed graph json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Dag {
    parents: Vec<Vec<NodeId>>,
    children: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dag")
            .field("n", &self.n())
            .field("edges", &self.edges().map(|(u, v)| (u.0, v.0)).collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct DagJson {
    n: usize,
    edges: Vec<[u32; 2]>,
}

impl Dag {
    /// Builds a graph on `1..=n`. Duplicate edges are merged.
    pub fn new<I>(n: usize, edges: I) -> Result<Dag, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut parents: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (u, v) in edges {
            for node in [u, v] {
                if node == 0 || node as usize > n {
                    return Err(GraphError::OutOfRange { node, n });
                }
            }
            if u >= v {
                return Err(GraphError::BackwardEdge { u, v });
            }
            parents[v as usize - 1].push(NodeId(u));
        }
        let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (vi, ps) in parents.iter_mut().enumerate() {
            ps.sort_unstable();
            ps.dedup();
            edge_count += ps.len();
            for p in ps.iter() {
                children[p.index()].push(NodeId::from_index(vi));
            }
        }
        Ok(Dag { parents, children, edge_count })
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n()).map(NodeId::from_index)
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v.index() < self.n()
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.children.iter().enumerate().flat_map(|(ui, cs)| cs.iter().map(move |&c| (NodeId::from_index(ui), c)))
    }

    pub fn parents(&self, v: NodeId) -> &[NodeId] {
        &self.parents[v.index()]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v.index()]
    }

    pub fn indeg(&self, v: NodeId) -> usize {
        self.parents[v.index()].len()
    }

    /// Maximum indegree over all nodes.
    pub fn max_indeg(&self) -> usize {
        self.parents.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_source(&self, v: NodeId) -> bool {
        self.parents[v.index()].is_empty()
    }

    pub fn is_sink(&self, v: NodeId) -> bool {
        self.children[v.index()].is_empty()
    }

    pub fn sources(&self) -> Vec<NodeId> {
        self.nodes().filter(|&v| self.is_source(v)).collect()
    }

    pub fn sinks(&self) -> Vec<NodeId> {
        self.nodes().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.parents(v).binary_search(&u).is_ok()
    }

    pub fn depth(&self, conv: DepthConvention) -> usize {
        conv.from_node_depth(self.depth_nodes_without(&[]))
    }

    /// Node count of a longest path in the subgraph induced by the nodes not
    /// flagged in `removed`. An empty slice removes nothing.
    pub fn depth_nodes_without(&self, removed: &[bool]) -> usize {
        let gone = |i: usize| removed.get(i).copied().unwrap_or(false);
        let mut longest = vec![0usize; self.n()];
        let mut best = 0;
        for (vi, ps) in self.parents.iter().enumerate() {
            if gone(vi) {
                continue;
            }
            let l = 1 + ps.iter().filter(|p| !gone(p.index())).map(|p| longest[p.index()]).max().unwrap_or(0);
            longest[vi] = l;
            best = best.max(l);
        }
        best
    }

    /// Length in nodes of the longest path ending at each node.
    pub fn longest_path_to(&self) -> Vec<usize> {
        let mut longest = vec![0usize; self.n()];
        for (vi, ps) in self.parents.iter().enumerate() {
            longest[vi] = 1 + ps.iter().map(|p| longest[p.index()]).max().unwrap_or(0);
        }
        longest
    }

    /// Number of edges on a shortest directed path from `from` to every node,
    /// `None` where unreachable.
    pub fn distances_from(&self, from: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[from.index()] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u.index()].unwrap();
            for &c in self.children(u) {
                if dist[c.index()].is_none() {
                    dist[c.index()] = Some(du + 1);
                    queue.push_back(c);
                }
            }
        }
        dist
    }

    /// `reach[u][v]` is true when a directed path leads from `u` to `v`
    /// (every node reaches itself).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        let mut reach = vec![vec![false; n]; n];
        for ui in (0..n).rev() {
            reach[ui][ui] = true;
            for c in &self.children[ui] {
                // c > u, so row c is already complete
                let (lo, hi) = reach.split_at_mut(c.index());
                for (dst, src) in lo[ui].iter_mut().zip(hi[0].iter()).skip(c.index()) {
                    *dst |= *src;
                }
            }
        }
        reach
    }

    pub fn to_json(&self) -> String {
        let doc = DagJson { n: self.n(), edges: self.edges().map(|(u, v)| [u.0, v.0]).collect() };
        serde_json::to_string(&doc).expect("graph json is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Dag, GraphError> {
        let doc: DagJson = serde_json::from_str(text)?;
        Dag::new(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for v in self.nodes() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -> {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// How `layered_random` picks the extra parent(s) of node `i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExtraEdgeRule {
    /// No extra parent: the result is a chain.
    None,
    /// One parent drawn uniformly from `1..i`, as in Argon2i-style graphs.
    UniformEarlier,
    /// Every node below `i - 1` becomes a parent independently with the given
    /// probability in percent.
    Bernoulli { percent: u8 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Chain(usize),
    /// `k` sources narrowing to a single apex.
    Pyramid(usize),
    Complete(usize),
    LayeredRandom {
        n: usize,
        seed: u64,
        rule: ExtraEdgeRule,
    },
}

pub fn generate(kind: Generator) -> Dag {
    match kind {
        Generator::Chain(n) => chain(n),
        Generator::Pyramid(k) => pyramid(k),
        Generator::Complete(n) => complete(n),
        Generator::LayeredRandom { n, seed, rule } => layered_random(n, seed, rule),
    }
}

pub fn chain(n: usize) -> Dag {
    Dag::new(n, (1..n as u32).map(|i| (i, i + 1))).expect("chain is well formed")
}

pub fn complete(n: usize) -> Dag {
    let n32 = n as u32;
    Dag::new(n, (1..=n32).flat_map(|u| (u + 1..=n32).map(move |v| (u, v)))).expect("complete dag is well formed")
}

/// Row `r` (0-based from the bottom) holds `k - r` nodes; node `j` of row
/// `r > 0` has parents `j` and `j + 1` of row `r - 1`.
pub fn pyramid(k: usize) -> Dag {
    assert!(k >= 1, "pyramid needs at least one row");
    let mut row_start = Vec::with_capacity(k);
    let mut next = 1u32;
    for r in 0..k {
        row_start.push(next);
        next += (k - r) as u32;
    }
    let n = (k * (k + 1)) / 2;
    let mut edges = Vec::new();
    for r in 1..k {
        for j in 0..(k - r) as u32 {
            let v = row_start[r] + j;
            edges.push((row_start[r - 1] + j, v));
            edges.push((row_start[r - 1] + j + 1, v));
        }
    }
    Dag::new(n, edges).expect("pyramid is well formed")
}

/// Node `i > 1` always has parent `i - 1`; `rule` adds more, deterministically in `seed`.
pub fn layered_random(n: usize, seed: u64, rule: ExtraEdgeRule) -> Dag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 2..=n as u32 {
        edges.push((i - 1, i));
        match rule {
            ExtraEdgeRule::None => {}
            ExtraEdgeRule::UniformEarlier => edges.push((rng.gen_range(1..i), i)),
            ExtraEdgeRule::Bernoulli { percent } => {
                for j in 1..i.saturating_sub(1) {
                    if rng.gen_range(0..100u8) < percent {
                        edges.push((j, i));
                    }
                }
            }
        }
    }
    Dag::new(n, edges).expect("layered graph is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_chain_from_edges() {
        let g = Dag::new(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(g, chain(3));
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.sinks(), vec![NodeId::new(3)]);
        assert_eq!(g.sources(), vec![NodeId::new(1)]);
    }

    #[test]
    fn rejects_backward_and_out_of_range_edges() {
        assert!(matches!(Dag::new(2, [(2, 1)]), Err(GraphError::BackwardEdge { u: 2, v: 1 })));
        assert!(matches!(Dag::new(2, [(1, 1)]), Err(GraphError::BackwardEdge { .. })));
        assert!(matches!(Dag::new(2, [(1, 3)]), Err(GraphError::OutOfRange { node: 3, n: 2 })));
        assert!(matches!(Dag::new(2, [(0, 1)]), Err(GraphError::OutOfRange { node: 0, .. })));
        assert!(matches!(Dag::new(0, []), Err(GraphError::Empty)));
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = Dag::new(2, [(1, 2), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn depth_conventions() {
        let g = chain(5);
        assert_eq!(g.depth(DepthConvention::Nodes), 5);
        assert_eq!(g.depth(DepthConvention::Edges), 4);
        let single = chain(1);
        assert_eq!(single.depth(DepthConvention::Nodes), 1);
        assert_eq!(single.depth(DepthConvention::Edges), 0);
    }

    #[test]
    fn depth_without_removed_nodes() {
        let g = chain(5);
        let mut removed = vec![false; 5];
        removed[2] = true;
        assert_eq!(g.depth_nodes_without(&removed), 2);
        assert_eq!(g.depth_nodes_without(&[true; 5]), 0);
    }

    #[test]
    fn generator_sizes() {
        assert_eq!(chain(3).n(), 3);
        let p2 = pyramid(2);
        assert_eq!((p2.n(), p2.edge_count()), (3, 2));
        assert_eq!(p2.sinks(), vec![NodeId::new(3)]);
        assert_eq!(p2.indeg(NodeId::new(3)), 2);
        let p3 = pyramid(3);
        assert_eq!((p3.n(), p3.edge_count()), (6, 6));
        assert_eq!(complete(4).edge_count(), 6);
    }

    #[test]
    fn pyramid_shape() {
        for k in 1..8 {
            let p = pyramid(k);
            assert_eq!(p.n(), k * (k + 1) / 2);
            assert_eq!(p.sinks().len(), 1);
            assert_eq!(p.sources().len(), k);
            assert_eq!(p.depth(DepthConvention::Nodes), k);
        }
    }

    #[test]
    fn layered_random_is_deterministic() {
        let a = layered_random(30, 7, ExtraEdgeRule::UniformEarlier);
        let b = layered_random(30, 7, ExtraEdgeRule::UniformEarlier);
        assert_eq!(a, b);
        for v in a.nodes().skip(1) {
            assert!(a.has_edge(NodeId::new(v.get() - 1), v));
            assert!(a.indeg(v) <= 2);
        }
        assert_eq!(layered_random(6, 1, ExtraEdgeRule::None), chain(6));
    }

    #[test]
    fn json_and_dot_export() {
        let g = chain(2);
        assert_eq!(g.to_json(), r#"{"n":2,"edges":[[1,2]]}"#);
        assert!(g.to_dot().contains("1 -> 2"));
        let back = Dag::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_round_trip_on_random_graphs() {
        for seed in 0..100 {
            let g = layered_random(2 + (seed as usize % 20), seed, ExtraEdgeRule::Bernoulli { percent: 25 });
            assert_eq!(Dag::from_json(&g.to_json()).unwrap(), g);
        }
    }

    #[test]
    fn distances_and_reachability() {
        let g = Dag::new(4, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let d = g.distances_from(NodeId::new(1));
        assert_eq!(d, vec![Some(0), Some(1), Some(1), None]);
        let r = g.reachability();
        assert!(r[0][2]);
        assert!(!r[2][0]);
        assert!(!r[0][3]);
    }
}

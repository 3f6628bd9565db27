use crate::graph::{Dag, DepthConvention, NodeId};

/// A simple undirected graph on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    // (u, v) with u < v, sorted, unique
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    /// Self-loops are rejected; repeated edges are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, String> {
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(format!("invalid edge ({a},{b}) for n = {n}"));
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(UndirectedGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Every labelled simple graph on `n` vertices, one per edge subset.
    pub fn all_on(n: usize) -> impl Iterator<Item = UndirectedGraph> {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        (0u64..1 << pairs.len()).map(move |mask| UndirectedGraph {
            n,
            edges: pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect(),
        })
    }
}

/// Size of a minimum vertex cover and one such cover (1-based), by
/// enumerating subsets in order of size.
pub fn min_vertex_cover(g: &UndirectedGraph) -> (usize, Vec<usize>) {
    assert!(g.n() <= 24, "exhaustive vertex cover is limited to 24 vertices");
    let covers = |mask: u32| g.edges().iter().all(|&(a, b)| mask >> (a - 1) & 1 == 1 || mask >> (b - 1) & 1 == 1);
    let best = (0u32..1 << g.n())
        .filter(|&m| covers(m))
        .min_by_key(|m| (m.count_ones(), *m))
        .expect("the full vertex set is a cover");
    let set = (1..=g.n()).filter(|v| best >> (v - 1) & 1 == 1).collect();
    (best.count_ones() as usize, set)
}

/// The reducibility instance built from an undirected graph, with the ids
/// of the original vertices.
#[derive(Clone, Debug)]
pub struct VcReduction {
    pub dag: Dag,
    pub originals: Vec<NodeId>,
}

/// Orients edges from smaller to larger label and decorates vertex `i`
/// with an in-chain and an out-chain. Under `Nodes` the chains have
/// `i - 1` and `n - i` nodes. Under `Edges` a chain of length `L` has
/// `L + 1` nodes, giving `i` and `n - i + 1`.
///
/// Ids: for each `i`, its in-chain then vertex `i`; after all vertices,
/// every out-chain in order of `i`.
pub fn vc_to_reducible(g: &UndirectedGraph, conv: DepthConvention) -> VcReduction {
    let n = g.n();
    let extra = usize::from(conv == DepthConvention::Edges);
    let in_len = |i: usize| i - 1 + extra;
    let out_len = |i: usize| n - i + extra;
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        next
    };
    let mut edges = Vec::new();
    let mut originals = Vec::with_capacity(n);
    for i in 1..=n {
        let mut prev = None;
        for _ in 0..in_len(i) {
            let v = fresh();
            if let Some(p) = prev {
                edges.push((p, v));
            }
            prev = Some(v);
        }
        let u = fresh();
        if let Some(p) = prev {
            edges.push((p, u));
        }
        originals.push(NodeId::new(u));
    }
    for i in 1..=n {
        let mut prev = originals[i - 1].get();
        for _ in 0..out_len(i) {
            let v = fresh();
            edges.push((prev, v));
            prev = v;
        }
    }
    for &(a, b) in g.edges() {
        edges.push((originals[a - 1].get(), originals[b - 1].get()));
    }
    let total = next as usize;
    let dag = Dag::new(total.max(1), edges).expect("vertices and chains are numbered topologically");
    VcReduction { dag, originals }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_construction() {
        let k3 = UndirectedGraph::new(3, [(1, 2), (1, 3), (2, 3)]).unwrap();
        let r = vc_to_reducible(&k3, DepthConvention::Nodes);
        // vertex i carries (i-1) + (n-i) = 2 chain nodes
        assert_eq!(r.dag.n(), 3 + 6);
        let o = &r.originals;
        assert!(r.dag.has_edge(o[0], o[1]) && r.dag.has_edge(o[0], o[2]) && r.dag.has_edge(o[1], o[2]));
        assert_eq!(min_vertex_cover(&k3).0, 2);
    }

    #[test]
    fn chain_lengths_per_convention() {
        let e = UndirectedGraph::new(2, [(1, 2)]).unwrap();
        let nodes = vc_to_reducible(&e, DepthConvention::Nodes);
        assert_eq!(nodes.dag.n(), 4);
        assert_eq!(nodes.originals, vec![NodeId::new(1), NodeId::new(3)]);
        let edges = vc_to_reducible(&e, DepthConvention::Edges);
        // in-chains of 1 and 2 nodes, out-chains of 2 and 1 nodes
        assert_eq!(edges.dag.n(), 2 + 3 + 3);
        assert_eq!(edges.originals, vec![NodeId::new(2), NodeId::new(5)]);
    }

    #[test]
    fn empty_graph_has_empty_cover() {
        let g = UndirectedGraph::new(2, []).unwrap();
        assert_eq!(min_vertex_cover(&g), (0, vec![]));
        assert_eq!(UndirectedGraph::all_on(4).count(), 64);
    }
}

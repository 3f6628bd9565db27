use std::fmt;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::b2lc::B2lcInstance;
use crate::graph::{Dag, NodeId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayoutError {
    #[error("equation {equation} has offset {c_i} >= c = {c}, leaving an empty equation chain")]
    DegenerateEquation { equation: usize, c_i: u64, c: u64 },
    #[error("tau must be at least 1")]
    ZeroTau,
    #[error("layout would need {nodes} nodes, beyond the u32 id range")]
    TooManyNodes { nodes: u128 },
}

/// Coordinates of a gadget node; every index is 1-based.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gadget {
    /// `v_i^{j,z}`: node `z` of copy `j` of the chain for variable `i`.
    VarChain {
        i: usize,
        j: usize,
        z: usize,
    },
    /// `e_i^a`: node `a` of the chain for equation `i`.
    EqChain {
        i: usize,
        a: usize,
    },
    /// `z_i^p`: position `p` of the long path for variable `i`.
    Path {
        i: usize,
        p: usize,
    },
    Sink,
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gadget::VarChain { i, j, z } => write!(f, "C/{i}/{j}/{z}"),
            Gadget::EqChain { i, a } => write!(f, "E/{i}/{a}"),
            Gadget::Path { i, p } => write!(f, "M/{i}/{p}"),
            Gadget::Sink => f.write_str("sink"),
        }
    }
}

/// The pebbling graph built from a B2LC instance together with the map
/// from gadget coordinates to node ids.
///
/// Ids are assigned var chains by `(i, j, z)`, then equation chains by
/// `(i, a)`, then paths by `(i, p)`, then the sink. Every edge points from
/// an earlier block or an earlier position, so this order is topological.
#[derive(Clone, Debug)]
pub struct ReductionLayout {
    graph: Dag,
    instance: B2lcInstance,
    tau: usize,
    c: usize,
    // first id of E_i, 0-based by equation
    eq_base: Vec<usize>,
    path_base: usize,
    labels: Vec<Gadget>,
}

/// `2cmn + 2ckm + 2`.
pub fn default_tau(inst: &B2lcInstance) -> u64 {
    let c = inst.total_offset();
    let m = inst.m() as u64;
    let n = inst.n_vars() as u64;
    let k = inst.k() as u64;
    2 * c * m * n + 2 * c * k * m + 2
}

/// `tau*c*m*n + 2cmn + 2ckm + 1`, the cost of the staggered pass strategy.
pub fn yes_instance_bound(tau: u64, c: u64, m: u64, n: u64, k: u64) -> u64 {
    tau * c * m * n + 2 * c * m * n + 2 * c * k * m + 1
}

pub fn b2lc_to_graph(inst: &B2lcInstance, tau: Option<usize>) -> Result<ReductionLayout, LayoutError> {
    let c = inst.total_offset();
    for (i, e) in inst.equations().iter().enumerate() {
        if e.c >= c {
            return Err(LayoutError::DegenerateEquation { equation: i + 1, c_i: e.c, c });
        }
    }
    let tau = match tau {
        Some(0) => return Err(LayoutError::ZeroTau),
        Some(t) => t as u128,
        None => default_tau(inst) as u128,
    };
    let n = inst.n_vars() as u128;
    let m = inst.m() as u128;
    let c128 = c as u128;
    let eq_nodes: u128 = inst.equations().iter().map(|e| (c - e.c) as u128).sum();
    let total = tau * n * c128 + eq_nodes + n * c128 * m + 1;
    if total > u32::MAX as u128 / 2 {
        return Err(LayoutError::TooManyNodes { nodes: total });
    }
    let (tau, c, n, m) = (tau as usize, c as usize, n as usize, m as usize);

    let mut labels = Vec::with_capacity(total as usize);
    for i in 1..=n {
        for j in 1..=tau {
            for z in 1..=c {
                labels.push(Gadget::VarChain { i, j, z });
            }
        }
    }
    let mut eq_base = Vec::with_capacity(inst.k());
    for (idx, e) in inst.equations().iter().enumerate() {
        eq_base.push(labels.len());
        for a in 1..=c - e.c as usize {
            labels.push(Gadget::EqChain { i: idx + 1, a });
        }
    }
    let path_base = labels.len();
    for i in 1..=n {
        for p in 1..=c * m {
            labels.push(Gadget::Path { i, p });
        }
    }
    labels.push(Gadget::Sink);

    let mut layout = ReductionLayout {
        graph: Dag::new(1, []).expect("single node graph"),
        instance: inst.clone(),
        tau,
        c,
        eq_base,
        path_base,
        labels,
    };
    let edges = layout.gadget_edges();
    layout.graph = Dag::new(layout.labels.len(), edges).expect("gadget ids are topological");
    Ok(layout)
}

impl ReductionLayout {
    pub fn graph(&self) -> &Dag {
        &self.graph
    }

    pub fn instance(&self) -> &B2lcInstance {
        &self.instance
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// Length of equation chain `E_i` (1-based `i`).
    pub fn eq_len(&self, i: usize) -> usize {
        self.c - self.instance.equations()[i - 1].c as usize
    }

    pub fn path_len(&self) -> usize {
        self.c * self.instance.m()
    }

    pub fn var(&self, i: usize, j: usize, z: usize) -> NodeId {
        NodeId::from_index(((i - 1) * self.tau + (j - 1)) * self.c + (z - 1))
    }

    pub fn eq(&self, i: usize, a: usize) -> NodeId {
        NodeId::from_index(self.eq_base[i - 1] + a - 1)
    }

    pub fn path(&self, i: usize, p: usize) -> NodeId {
        NodeId::from_index(self.path_base + (i - 1) * self.path_len() + p - 1)
    }

    pub fn sink(&self) -> NodeId {
        NodeId::from_index(self.labels.len() - 1)
    }

    pub fn id_of(&self, g: Gadget) -> NodeId {
        match g {
            Gadget::VarChain { i, j, z } => self.var(i, j, z),
            Gadget::EqChain { i, a } => self.eq(i, a),
            Gadget::Path { i, p } => self.path(i, p),
            Gadget::Sink => self.sink(),
        }
    }

    pub fn gadget_of(&self, v: NodeId) -> Gadget {
        self.labels[v.index()]
    }

    pub fn labels(&self) -> &[Gadget] {
        &self.labels
    }

    /// `tau*n*c + sum(c - c_i) + n*c*m + 1`.
    pub fn expected_node_count(&self) -> usize {
        let n = self.instance.n_vars();
        let eq: usize = (1..=self.instance.k()).map(|i| self.eq_len(i)).sum();
        self.tau * n * self.c + eq + n * self.c * self.instance.m() + 1
    }

    fn gadget_edges(&self) -> Vec<(u32, u32)> {
        let mut edges = Vec::new();
        let mut add = |u: NodeId, v: NodeId| edges.push((u.get(), v.get()));
        let n = self.instance.n_vars();
        for i in 1..=n {
            for j in 1..=self.tau {
                for z in 2..=self.c {
                    add(self.var(i, j, z - 1), self.var(i, j, z));
                }
            }
        }
        for (idx, e) in self.instance.equations().iter().enumerate() {
            let i = idx + 1;
            for a in 1..=self.eq_len(i) {
                let node = self.eq(i, a);
                if a > 1 {
                    add(self.eq(i, a - 1), node);
                }
                for l in 1..=self.tau {
                    add(self.var(e.alpha, l, a), node);
                    add(self.var(e.beta, l, a + e.c as usize), node);
                }
            }
        }
        for i in 1..=n {
            for pos in 1..=self.path_len() {
                let node = self.path(i, pos);
                if pos > 1 {
                    add(self.path(i, pos - 1), node);
                }
                let p = (pos - 1) % self.c + 1;
                for j in 1..=self.tau {
                    add(self.var(i, j, p), node);
                }
            }
        }
        for i in 1..=self.instance.k() {
            add(self.eq(i, self.eq_len(i)), self.sink());
        }
        for i in 1..=n {
            add(self.path(i, self.path_len()), self.sink());
        }
        edges
    }

    /// Re-derives every structural invariant from the graph itself.
    pub fn check_invariants(&self) -> Result<(), String> {
        let g = &self.graph;
        if g.n() != self.expected_node_count() || self.labels.len() != g.n() {
            return Err(format!("node count {} != {}", g.n(), self.expected_node_count()));
        }
        for (idx, &lab) in self.labels.iter().enumerate() {
            if self.id_of(lab).index() != idx {
                return Err(format!("label {lab} does not round-trip"));
            }
        }
        let ids = |v: Vec<NodeId>| {
            let mut v = v;
            v.sort();
            v
        };
        let n = self.instance.n_vars();
        for i in 1..=n {
            for j in 1..=self.tau {
                for z in 1..=self.c {
                    let want = if z == 1 { vec![] } else { vec![self.var(i, j, z - 1)] };
                    if g.parents(self.var(i, j, z)) != want.as_slice() {
                        return Err(format!("bad parents for {}", Gadget::VarChain { i, j, z }));
                    }
                }
            }
        }
        for (idx, e) in self.instance.equations().iter().enumerate() {
            let i = idx + 1;
            for a in 1..=self.eq_len(i) {
                let mut want: Vec<NodeId> = (1..=self.tau)
                    .flat_map(|l| [self.var(e.alpha, l, a), self.var(e.beta, l, a + e.c as usize)])
                    .collect();
                if a > 1 {
                    want.push(self.eq(i, a - 1));
                }
                if g.parents(self.eq(i, a)) != ids(want).as_slice() {
                    return Err(format!("bad parents for {}", Gadget::EqChain { i, a }));
                }
            }
        }
        for i in 1..=n {
            for p in 1..=self.path_len() {
                let mut want: Vec<NodeId> = (1..=self.tau).map(|j| self.var(i, j, (p - 1) % self.c + 1)).collect();
                if p > 1 {
                    want.push(self.path(i, p - 1));
                }
                if g.parents(self.path(i, p)) != ids(want).as_slice() {
                    return Err(format!("bad parents for {}", Gadget::Path { i, p }));
                }
            }
        }
        let mut want: Vec<NodeId> = (1..=self.instance.k()).map(|i| self.eq(i, self.eq_len(i))).collect();
        want.extend((1..=n).map(|i| self.path(i, self.path_len())));
        if g.parents(self.sink()) != ids(want).as_slice() || g.sinks() != vec![self.sink()] {
            return Err("bad sink".into());
        }
        Ok(())
    }

    /// Graph JSON extended with `"labels"`, `"tau"`, `"c"` and the instance.
    pub fn to_json(&self) -> String {
        let mut graph: Map<String, Value> =
            serde_json::from_str(&self.graph.to_json()).expect("graph json is an object");
        let labels: Map<String, Value> =
            self.labels.iter().enumerate().map(|(idx, lab)| (lab.to_string(), json!(idx + 1))).collect();
        graph.insert("tau".into(), json!(self.tau));
        graph.insert("c".into(), json!(self.c));
        graph
            .insert("instance".into(), serde_json::from_str(&self.instance.to_json()).expect("instance json is valid"));
        graph.insert("labels".into(), Value::Object(labels));
        Value::Object(graph).to_string()
    }
}

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Mode, Pebbling};
use crate::b2lc::{group_consistent, B2lcWitness};
use crate::graph::NodeId;
use crate::reductions::{Gadget, ReductionLayout};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionPebblingError {
    #[error("equation {equation} is satisfied by none of the assignments")]
    InvalidWitness { equation: usize },
    #[error("witness has {got} assignments of width {width}, layout expects {m} of width {n_vars}")]
    WitnessShape { got: usize, width: usize, m: usize, n_vars: usize },
}

/// The staggered `m`-pass pebbling of a gadget graph built from a yes
/// instance.
///
/// Pass `y` walks all chain copies once. Variable `i` starts at local
/// offset `s_i = V - x_{y,i}`, so node `z` of its chains sits at local time
/// `s_i + z`. Both chain endpoints of an equation satisfied by the pass then
/// line up, and the equation chain advances one node per round behind them.
/// Each long path advances `c` positions per pass and keeps its frontier
/// pebble between passes; completed equation chains keep their last node
/// until the sink round.
pub fn reduction_pebbling(layout: &ReductionLayout, w: &B2lcWitness) -> Result<Pebbling, ReductionPebblingError> {
    let inst = layout.instance();
    let (n, m, k, c) = (inst.n_vars(), inst.m(), inst.k(), layout.c());
    let width = w.values.first().map_or(0, Vec::len);
    if w.values.len() != m || w.values.iter().any(|row| row.len() != n) {
        return Err(ReductionPebblingError::WitnessShape { got: w.values.len(), width, m, n_vars: n });
    }

    // Per pass: the equations it walks and canonical values whose spread is at most c.
    let mut walked = vec![false; k];
    let mut passes: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(m);
    for row in &w.values {
        let satisfied: Vec<usize> = (0..k).filter(|&i| inst.equations()[i].holds(row)).collect();
        let vals = group_consistent(inst, &satisfied).expect("equations holding under one assignment are consistent");
        let top = *vals.iter().max().unwrap() as usize;
        let offsets: Vec<usize> = vals.iter().map(|&x| top - x as usize).collect();
        let mine: Vec<usize> = satisfied.into_iter().filter(|&i| !std::mem::replace(&mut walked[i], true)).collect();
        passes.push((offsets, mine));
    }
    if let Some(i) = walked.iter().position(|&done| !done) {
        return Err(ReductionPebblingError::InvalidWitness { equation: i + 1 });
    }

    // Global start of each pass: the long path of every variable must have
    // finished its previous stretch before its chain restarts.
    let mut starts = Vec::with_capacity(m);
    let mut start = 0usize;
    for (y, (offsets, _)) in passes.iter().enumerate() {
        if y > 0 {
            let prev = &passes[y - 1].0;
            let lag = (0..n).map(|i| prev[i] as isize - offsets[i] as isize).max().unwrap_or(0);
            start += c + lag.max(0) as usize;
        }
        starts.push(start);
    }
    let last_spread = *passes[m - 1].0.iter().max().unwrap();
    let sink_round = starts[m - 1] + last_spread + c + 2;

    let mut rounds: Vec<BTreeSet<NodeId>> = vec![BTreeSet::new(); sink_round];
    let mut put = |r: usize, v: NodeId| {
        rounds[r - 1].insert(v);
    };
    let tau = layout.tau();
    let mut path_frontier: Vec<Option<usize>> = vec![None; n];
    for (y, (offsets, mine)) in passes.iter().enumerate() {
        let g0 = starts[y];
        for i in 1..=n {
            let s = offsets[i - 1];
            for z in 1..=c {
                for j in 1..=tau {
                    put(g0 + s + z, layout.var(i, j, z));
                }
                let pos = y * c + z;
                let at = g0 + s + z + 1;
                put(at, layout.path(i, pos));
                // hold the previous path pebble until the round before
                if let Some(last) = path_frontier[i - 1] {
                    for r in last + 1..at {
                        put(r, layout.path(i, pos - 1));
                    }
                }
                path_frontier[i - 1] = Some(at);
            }
        }
        for &e in mine {
            let eq = inst.equations()[e];
            let s = offsets[eq.alpha - 1];
            let len = layout.eq_len(e + 1);
            for a in 1..=len {
                put(g0 + s + a + 1, layout.eq(e + 1, a));
            }
            for r in g0 + s + len + 2..sink_round {
                put(r, layout.eq(e + 1, len));
            }
        }
    }
    for i in 1..=n {
        let last = path_frontier[i - 1].unwrap();
        for r in last + 1..sink_round {
            put(r, layout.path(i, layout.path_len()));
        }
    }
    put(sink_round, layout.sink());
    Ok(Pebbling::new(Mode::Parallel, rounds.into_iter().map(|r| r.into_iter().collect()).collect()))
}

/// Drops, round by round, every chain pebble whose copies at the same
/// position of the same variable are not all present.
pub fn sync_normalize(layout: &ReductionLayout, p: &Pebbling) -> Pebbling {
    let rounds = p
        .rounds()
        .iter()
        .map(|round| {
            let present: BTreeSet<NodeId> = round.iter().copied().collect();
            round.iter().copied().filter(|&v| synced_in(layout, &present, v)).collect()
        })
        .collect();
    Pebbling::new(p.mode(), rounds)
}

/// Whether every round holds either all or none of the copies of each
/// chain position.
pub fn is_synchronized(layout: &ReductionLayout, p: &Pebbling) -> bool {
    p.rounds().iter().all(|round| {
        let present: BTreeSet<NodeId> = round.iter().copied().collect();
        round.iter().all(|&v| synced_in(layout, &present, v))
    })
}

fn synced_in(layout: &ReductionLayout, present: &BTreeSet<NodeId>, v: NodeId) -> bool {
    if v.index() >= layout.labels().len() {
        return true;
    }
    match layout.gadget_of(v) {
        Gadget::VarChain { i, z, .. } => (1..=layout.tau()).all(|j| present.contains(&layout.var(i, j, z))),
        _ => true,
    }
}

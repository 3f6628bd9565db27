mod common;

use pebble_core::graph::{DepthConvention, NodeId};
use pebble_core::pebbling::{
    cost, is_synchronized, random_legal_pebbling, sync_normalize, trivial_pebbling, validate, walk_pebbling, Mode,
    Pebbling,
};
use pebble_core::reductions::b2lc_to_graph;
use pebble_core::suite::tiny_layout_instance;
use proptest::prelude::*;

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Parallel), Just(Mode::Sequential)]
}

proptest! {
    #[test]
    fn trivial_costs_n_choose_two_plus_n(g in common::dag(10)) {
        let p = trivial_pebbling(&g);
        let n = g.n() as u64;
        prop_assert!(validate(&g, &p).is_legal());
        let c = cost(&p);
        prop_assert_eq!((c.cc, c.t), (n * (n + 1) / 2, g.n()));
    }

    #[test]
    fn generated_pebblings_respect_the_cost_sandwich(g in common::dag(10), seed in any::<u64>(), mode in mode()) {
        for p in [walk_pebbling(&g), random_legal_pebbling(&g, mode, seed)] {
            prop_assert!(validate(&g, &p).is_legal());
            let c = cost(&p);
            // every node reaches a sink, so every node is pebbled at least once
            prop_assert!(g.n() as u64 <= c.cc);
            prop_assert!(g.depth(DepthConvention::Nodes) <= c.t);
            prop_assert!(c.cc <= c.st);
        }
    }

    #[test]
    fn sequential_legality_implies_parallel(g in common::dag(9), seed in any::<u64>()) {
        let p = random_legal_pebbling(&g, Mode::Sequential, seed);
        prop_assert!(validate(&g, &p).is_legal());
        prop_assert!(validate(&g, &p.clone().with_mode(Mode::Parallel)).is_legal());
    }

    #[test]
    fn json_round_trip(g in common::dag(8), seed in any::<u64>(), mode in mode()) {
        let p = random_legal_pebbling(&g, mode, seed);
        prop_assert_eq!(Pebbling::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn dropping_a_needed_parent_is_caught(g in common::dag(8), seed in any::<u64>()) {
        let p = random_legal_pebbling(&g, Mode::Parallel, seed);
        // remove node v from the round before its first placement
        let rounds = p.rounds();
        for (r, round) in rounds.iter().enumerate().skip(1) {
            for &v in round {
                if rounds[r - 1].contains(&v) {
                    continue;
                }
                if let Some(&u) = g.parents(v).first() {
                    let mut broken = rounds.to_vec();
                    broken[r - 1].retain(|&x| x != u);
                    let verdict = validate(&g, &Pebbling::new(Mode::Parallel, broken));
                    prop_assert!(!verdict.is_legal());
                    return Ok(());
                }
            }
        }
    }

    #[test]
    fn sync_normalize_never_adds_cost_and_is_idempotent(seed in any::<u64>(), mode in mode()) {
        let layout = b2lc_to_graph(&tiny_layout_instance(), Some(2)).unwrap();
        let p = random_legal_pebbling(layout.graph(), mode, seed);
        let q = sync_normalize(&layout, &p);
        prop_assert!(cost(&q).cc <= cost(&p).cc);
        prop_assert_eq!(sync_normalize(&layout, &q), q.clone());
        prop_assert!(is_synchronized(&layout, &q));
    }
}

#[test]
fn sync_normalize_can_break_legality() {
    // two copies a, b of one chain; b lags one round behind a
    let layout = b2lc_to_graph(&tiny_layout_instance(), Some(2)).unwrap();
    let (a1, a2) = (layout.var(1, 1, 1), layout.var(1, 1, 2));
    let (b1, b2) = (layout.var(1, 2, 1), layout.var(1, 2, 2));
    let p = Pebbling::new(Mode::Parallel, vec![vec![a1, b1], vec![a2, b1], vec![a2, b2]]);
    let g = layout.graph();
    let legal_prefix = validate(g, &p);
    // only the sink requirement fails before normalization
    assert!(legal_prefix.first_violation().is_some_and(|v| v.round.is_none()));
    let q = sync_normalize(&layout, &p);
    assert_eq!(q.rounds()[1], Vec::<NodeId>::new());
    let v = validate(g, &q);
    assert_eq!(v.first_violation().map(|v| (v.round, v.node)), Some((Some(3), a2)));
}

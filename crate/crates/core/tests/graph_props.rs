mod common;

use pebble_core::graph::{layered_random, Dag, DepthConvention, ExtraEdgeRule};
use pebble_core::reductions::{append_chain, reduce_indegree_with_map};
use proptest::prelude::*;

fn rule() -> impl Strategy<Value = ExtraEdgeRule> {
    prop_oneof![
        Just(ExtraEdgeRule::None),
        Just(ExtraEdgeRule::UniformEarlier),
        (0u8..=100).prop_map(|percent| ExtraEdgeRule::Bernoulli { percent }),
    ]
}

proptest! {
    #[test]
    fn json_round_trip(g in common::dag(9)) {
        prop_assert_eq!(Dag::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn edge_depth_is_node_depth_minus_one(g in common::dag(9)) {
        prop_assert_eq!(g.depth(DepthConvention::Edges) + 1, g.depth(DepthConvention::Nodes));
        prop_assert_eq!(g.depth(DepthConvention::Nodes), common::depth_without(&g, 0));
    }

    #[test]
    fn layered_random_has_a_spine(n in 1usize..40, seed in any::<u64>(), rule in rule()) {
        let g = layered_random(n, seed, rule);
        prop_assert_eq!(g.n(), n);
        prop_assert_eq!(g.depth(DepthConvention::Nodes), n);
        prop_assert_eq!(&g, &layered_random(n, seed, rule));
        if rule == ExtraEdgeRule::UniformEarlier {
            prop_assert!(g.max_indeg() <= 2);
        }
    }

    #[test]
    fn indegree_reduction_bounds_degree_and_keeps_reachability(g in common::dag(8), delta in 2usize..4) {
        let (h, map) = reduce_indegree_with_map(&g, delta).unwrap();
        prop_assert!(h.max_indeg() <= delta);
        prop_assert_eq!(h.sinks().len(), g.sinks().len());
        let rg = g.reachability();
        let rh = h.reachability();
        for u in g.nodes() {
            for v in g.nodes() {
                prop_assert_eq!(rg[u.index()][v.index()], rh[map[u.index()].index()][map[v.index()].index()]);
            }
        }
        if g.max_indeg() <= delta {
            prop_assert_eq!(h, g);
        }
    }

    #[test]
    fn appended_chain_adds_its_length_to_the_depth(g in common::dag(8), len in 1usize..6) {
        match append_chain(&g, len) {
            Ok(h) => {
                prop_assert_eq!(g.sinks().len(), 1);
                prop_assert_eq!(h.depth(DepthConvention::Nodes), g.depth(DepthConvention::Nodes) + len);
                prop_assert_eq!(h.sinks().len(), 1);
            }
            Err(_) => prop_assert!(g.sinks().len() > 1),
        }
    }
}

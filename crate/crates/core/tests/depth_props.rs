mod common;

use pebble_core::depth_reduce::{greedy_reduce, is_reducible, min_reducing_set, verify_set};
use pebble_core::graph::DepthConvention;
use proptest::prelude::*;

const STEPS: u64 = 10_000_000;

fn conv() -> impl Strategy<Value = DepthConvention> {
    prop_oneof![Just(DepthConvention::Nodes), Just(DepthConvention::Edges)]
}

proptest! {
    #[test]
    fn exact_matches_subset_enumeration(g in common::dag(8), d in 0usize..6, conv in conv()) {
        let want = common::naive_min_reducing(&g, conv.node_limit(d));
        let (e, set) = min_reducing_set(&g, d, conv, STEPS).unwrap();
        prop_assert_eq!(e, want);
        prop_assert_eq!(set.len(), e);
        prop_assert!(verify_set(&g, &set, d, conv));
        if e > 0 {
            prop_assert!(!is_reducible(&g, e - 1, d, conv, STEPS).unwrap().reducible);
        }
        let r = is_reducible(&g, e, d, conv, STEPS).unwrap();
        prop_assert!(r.reducible && r.residual_depth <= d);
    }

    #[test]
    fn greedy_is_valid_and_never_beats_exact(g in common::dag(8), d in 0usize..6, conv in conv()) {
        let s = greedy_reduce(&g, d, conv);
        prop_assert!(verify_set(&g, &s, d, conv));
        prop_assert!(s.len() >= min_reducing_set(&g, d, conv, STEPS).unwrap().0);
    }

    #[test]
    fn minimum_shrinks_as_depth_grows(g in common::dag(8), d in 0usize..6) {
        let conv = DepthConvention::Nodes;
        let a = min_reducing_set(&g, d, conv, STEPS).unwrap().0;
        let b = min_reducing_set(&g, d + 1, conv, STEPS).unwrap().0;
        prop_assert!(b <= a);
        // the edge bound d is the node bound d + 1
        prop_assert_eq!(min_reducing_set(&g, d, DepthConvention::Edges, STEPS).unwrap().0, b);
    }
}

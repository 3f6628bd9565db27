mod common;

use pebble_core::graph::{chain, pyramid};
use pebble_core::pebbling::{cost, validate, Mode};
use pebble_core::search::{exact_min_space, exact_min_st, exact_pcc, exact_pcc_bounded, SearchError, SearchLimits};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pcc_matches_naive_dijkstra(g in common::dag(6)) {
        for (mode, seq) in [(Mode::Parallel, false), (Mode::Sequential, true)] {
            let r = exact_pcc(&g, mode, &SearchLimits::default()).unwrap();
            prop_assert!(r.proven);
            prop_assert_eq!(Some(r.optimum), common::naive_pcc(&g, seq, None));
            prop_assert!(validate(&g, &r.witness).is_legal());
            prop_assert_eq!(cost(&r.witness).cc, r.optimum);
        }
    }

    #[test]
    fn bounded_pcc_matches_naive_dijkstra(g in common::dag(5), slack in 0usize..3) {
        let t_max = g.n() - 1 + slack;
        let naive = common::naive_pcc(&g, false, Some(t_max));
        match exact_pcc_bounded(&g, t_max, Mode::Parallel, &SearchLimits::default()) {
            Ok(r) => {
                prop_assert_eq!(Some(r.optimum), naive);
                prop_assert!(r.witness.len() <= t_max);
                prop_assert!(validate(&g, &r.witness).is_legal());
            }
            Err(SearchError::Infeasible) => prop_assert_eq!(naive, None),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn seeds_never_change_the_optimum(g in common::dag(6)) {
        let plain = exact_pcc(&g, Mode::Parallel, &SearchLimits::default()).unwrap().optimum;
        let tight = SearchLimits { upper_bound_seed: Some(plain), ..SearchLimits::default() };
        prop_assert_eq!(exact_pcc(&g, Mode::Parallel, &tight).unwrap().optimum, plain);
        if plain > 1 {
            let low = SearchLimits { upper_bound_seed: Some(plain - 1), ..SearchLimits::default() };
            let refused = matches!(exact_pcc(&g, Mode::Parallel, &low), Err(SearchError::SeedBelowOptimum { .. }));
            prop_assert!(refused);
        }
    }

    #[test]
    fn space_and_space_time_are_consistent(g in common::dag(6)) {
        let limits = SearchLimits::default();
        let space = exact_min_space(&g, Mode::Parallel, &limits).unwrap();
        let st = exact_min_st(&g, Mode::Parallel, &limits).unwrap();
        prop_assert!(validate(&g, &space.witness).is_legal());
        prop_assert!(cost(&space.witness).max_space as u64 <= space.optimum);
        prop_assert_eq!(cost(&st.witness).st, st.optimum);
        // a witness for the least space is a candidate for least st
        prop_assert!(st.optimum <= cost(&space.witness).st);
        prop_assert!(st.optimum >= space.optimum);
        let capped = SearchLimits { max_space: Some(space.optimum as usize), ..SearchLimits::default() };
        let r = exact_pcc(&g, Mode::Parallel, &capped).unwrap();
        prop_assert!(cost(&r.witness).max_space as u64 <= space.optimum);
    }
}

#[test]
fn chains_and_pyramids() {
    let limits = SearchLimits::default();
    for n in 1..=8 {
        assert_eq!(exact_pcc(&chain(n), Mode::Parallel, &limits).unwrap().optimum, n as u64);
        assert_eq!(exact_min_st(&chain(n), Mode::Parallel, &limits).unwrap().optimum, n as u64);
    }
    assert_eq!(exact_min_space(&pyramid(3), Mode::Parallel, &limits).unwrap().optimum, 3);
    // parents may be released in the round their child is placed, so k suffices
    assert_eq!(exact_min_space(&pyramid(4), Mode::Sequential, &limits).unwrap().optimum, 4);
}

#[test]
fn limits_are_reported() {
    let small = SearchLimits { max_nodes: 3, ..SearchLimits::default() };
    assert!(matches!(exact_pcc(&chain(4), Mode::Parallel, &small), Err(SearchError::TooLarge { n: 4, max_nodes: 3 })));
    let starved = SearchLimits { max_states: 1, ..SearchLimits::default() };
    assert!(matches!(exact_pcc(&pyramid(3), Mode::Parallel, &starved), Err(SearchError::Exhausted { .. })));
    assert_eq!(exact_pcc_bounded(&chain(4), 3, Mode::Parallel, &SearchLimits::default()), Err(SearchError::Infeasible));
}

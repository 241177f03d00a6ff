mod common;

use common::{brute_gamma, brute_i};
use idom_core::enumeration::{enumerate, EnumSpec};
use idom_core::solvers::{
    domination_number, independent_domination_number, maximal_independent_sets, verify_set, SetMode,
};
use idom_core::Graph;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (proptest::collection::vec(0u8..100, pairs), 5u8..70).prop_map(move |(rolls, p)| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(rolls)
                .filter(|(_, r)| *r < p)
                .map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solvers_match_subset_sweep(g in arb_graph(13)) {
        let i = independent_domination_number(&g);
        let d = domination_number(&g);
        prop_assert_eq!(i.value, brute_i(&g));
        prop_assert_eq!(d.value, brute_gamma(&g));
        prop_assert!(d.value <= i.value);
        prop_assert!(verify_set(&g, i.witness, SetMode::IndependentDominating));
        prop_assert!(verify_set(&g, d.witness, SetMode::Dominating));
        prop_assert_eq!(i.witness.len(), i.value);
        prop_assert_eq!(d.witness.len(), d.value);
    }

    #[test]
    fn mis_oracle_is_exact(g in arb_graph(12)) {
        let sets = maximal_independent_sets(&g).unwrap();
        let mut sorted = sets.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), sets.len());
        for s in &sets {
            prop_assert!(verify_set(&g, *s, SetMode::IndependentDominating));
        }
        // Every independent dominating set is maximal independent, so the
        // subset sweep counts the same family.
        let all = (0..1u64 << g.order())
            .filter(|&m| verify_set(&g, idom_core::VertexSet(m), SetMode::IndependentDominating))
            .count();
        prop_assert_eq!(all, sets.len());
        let min = sets.iter().map(|s| s.len()).min().unwrap_or(0);
        prop_assert_eq!(min, independent_domination_number(&g).value);
    }

    #[test]
    fn solvers_are_deterministic(g in arb_graph(14)) {
        prop_assert_eq!(
            independent_domination_number(&g).witness,
            independent_domination_number(&g).witness
        );
        prop_assert_eq!(domination_number(&g).witness, domination_number(&g).witness);
    }

    #[test]
    fn disjoint_union_is_additive(a in arb_graph(8), b in arb_graph(8)) {
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(
            independent_domination_number(&u).value,
            independent_domination_number(&a).value + independent_domination_number(&b).value
        );
        prop_assert_eq!(
            domination_number(&u).value,
            domination_number(&a).value + domination_number(&b).value
        );
    }
}

#[test]
fn corpus_up_to_eight_matches_oracles() {
    for n in 0..=8 {
        for g in enumerate(EnumSpec::subcubic(n)).unwrap() {
            let min_mis = maximal_independent_sets(&g).unwrap().iter().map(|s| s.len()).min().unwrap();
            assert_eq!(independent_domination_number(&g).value, min_mis);
            assert_eq!(domination_number(&g).value, brute_gamma(&g));
        }
    }
}

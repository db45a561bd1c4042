mod common;

use common::*;
use proptest::prelude::*;
use turangap_core::{Graph, VertexSet};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn operations_stay_well_formed(g in arb_graph(14), h in arb_graph(8), k in 1usize..4) {
        prop_assert!(g.is_well_formed());
        prop_assert!(g.complement().is_well_formed());
        prop_assert!(g.power(k).is_well_formed());
        prop_assert!(g.join(&h).unwrap().is_well_formed());
        prop_assert!(g.disjoint_union(&h).unwrap().is_well_formed());
        let half = VertexSet::from_vertices(g.n(), (0..g.n()).step_by(2)).unwrap();
        prop_assert!(g.induced(&half).graph.is_well_formed());
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(16)) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        prop_assert_eq!(g.edge_count() + c.edge_count(), g.n() * (g.n() - 1) / 2);
    }

    #[test]
    fn powers_are_monotone(g in arb_graph(14), k in 1usize..5) {
        prop_assert_eq!(g.power(1), g.clone());
        let (a, b) = (g.power(k), g.power(k + 1));
        for (u, v) in a.edges() {
            prop_assert!(b.has_edge(u, v));
        }
    }

    #[test]
    fn join_edge_count(g in arb_graph(12), h in arb_graph(12)) {
        let j = g.join(&h).unwrap();
        prop_assert_eq!(j.n(), g.n() + h.n());
        prop_assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + g.n() * h.n());
    }

    #[test]
    fn clique_search_matches_enumeration(g in arb_graph(9), r in 1usize..6) {
        let want = !brute_cliques(&g, r).is_empty();
        prop_assert_eq!(g.clique_exists(r), want);
        match g.find_clique(r) {
            Some(c) => {
                prop_assert_eq!(c.len(), r);
                for a in 0..r {
                    for b in a + 1..r {
                        prop_assert!(g.has_edge(c[a], c[b]));
                    }
                }
            }
            None => prop_assert!(!want),
        }
        prop_assert_eq!(g.cliques(r).len(), brute_cliques(&g, r).len());
    }
}

#[test]
fn join_pairs_from_a_fixed_sample() {
    let mut rng = rng(12);
    for _ in 0..50 {
        let (a, b) = (random_graph(&mut rng, 12, 40), random_graph(&mut rng, 9, 60));
        let j = a.join(&b).unwrap();
        assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + 12 * 9);
    }
}

#[test]
fn empty_and_complete() {
    assert_eq!(Graph::complete(6).complement(), Graph::empty(6));
    assert!(!Graph::empty(5).clique_exists(2));
    assert!(Graph::empty(5).clique_exists(1));
}

mod common;

use common::*;
use proptest::prelude::*;
use turangap_core::constructions::{
    make_f, make_f_plus_k, make_g4, make_gr, make_pentagon_blowup, make_turan, BlowupMode, BlowupSpec, RecursiveSpec,
};
use turangap_core::Fraction;

fn mode() -> impl Strategy<Value = BlowupMode> {
    prop_oneof![Just(BlowupMode::SeededRandom), Just(BlowupMode::Quasirandom)]
}

fn round_half_up(p: i64, q: i64, count: usize) -> usize {
    ((2 * p * count as i64 + q) / (2 * q)) as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn theta_edge_counts_are_exact(
        sizes in proptest::array::uniform5(0usize..7),
        p in 0i64..=12,
        seed in any::<u64>(),
        mode in mode(),
    ) {
        let theta = Fraction::new(p, 12);
        let spec = BlowupSpec::new(sizes, theta).with_seed(seed).with_mode(mode);
        let pg = make_pentagon_blowup(&spec).unwrap();
        prop_assert!(pg.graph.is_well_formed());
        for i in 0..5 {
            let j = (i + 2) % 5;
            let between = pg
                .graph
                .edges()
                .iter()
                .filter(|&&(u, v)| {
                    let (a, b) = (pg.part_of[u], pg.part_of[v]);
                    (a == i && b == j) || (a == j && b == i)
                })
                .count();
            let (n, d) = (*theta.numer(), *theta.denom());
            prop_assert_eq!(between, round_half_up(n, d, sizes[i] * sizes[j]));
        }
        // the same spec builds the same graph
        prop_assert_eq!(make_pentagon_blowup(&spec).unwrap(), pg);
    }

    #[test]
    fn gr_without_intra_edges_has_no_kr(
        sizes in proptest::array::uniform5(1usize..6),
        apex in proptest::collection::vec(1usize..6, 1..3),
        seed in any::<u64>(),
    ) {
        let r = 3 + apex.len();
        let spec = RecursiveSpec { r, base: BlowupSpec::new(sizes, Fraction::new(1, 4)).with_seed(seed), apex_sizes: apex };
        let pg = make_gr(&spec).unwrap();
        let cross: Vec<(usize, usize)> = pg
            .without_theta_edges()
            .edges()
            .into_iter()
            .filter(|&(u, v)| pg.part_of[u] != pg.part_of[v])
            .collect();
        let g = turangap_core::Graph::from_edges(pg.graph.n(), &cross).unwrap();
        prop_assert!(brute_cliques(&g, r).is_empty());
    }

    #[test]
    fn turan_graph_edge_count(n in 0usize..20, k in 1usize..6) {
        let t = make_turan(n, k).unwrap();
        prop_assert_eq!(t.graph.edge_count(), balanced_multipartite_edges(n, k));
        prop_assert!(!t.graph.clique_exists(k + 1));
    }
}

#[test]
fn f_d_is_regular_and_triangle_free() {
    for d in 1..=10 {
        let f = make_f(d).unwrap();
        assert!(f.degrees().iter().all(|&x| x == d), "d={d}");
        assert!(!f.clique_exists(3), "d={d}");
        if d >= 2 {
            assert_eq!(f.n(), 3 * d - 1);
        }
    }
}

#[test]
fn f_plus_clique_avoids_k_r_plus_one() {
    for d in 1..=5 {
        for r in 2..=5 {
            let g = make_f_plus_k(d, r - 2).unwrap();
            assert!(!g.clique_exists(r + 1), "d={d} r={r}");
            assert!(g.clique_exists(r), "d={d} r={r}");
        }
    }
}

#[test]
fn g4_minimum_degree_at_exact_proportions() {
    for k in 1..=3 {
        let spec = BlowupSpec::new([8 * k; 5], Fraction::new(1, 8)).with_mode(BlowupMode::Quasirandom);
        let pg = make_g4(&spec, 15 * k).unwrap();
        let n = pg.graph.n();
        assert_eq!(n, 55 * k);
        for v in pg.part(5) {
            assert_eq!(pg.graph.degree(v), 40 * k);
            assert_eq!(pg.graph.degree(v) * 11, 8 * n);
        }
        for v in 0..40 * k {
            assert!(pg.graph.degree(v) >= 40 * k, "k={k} v={v}");
        }
    }
}

mod common;

use proptest::prelude::*;

use gapcheck::cayley::{cayley_graph, GeneratingSet, GroupTable};
use gapcheck::expansion::{cheeger_constant, cheeger_constant_partitioned, vertex_expansion, Cut};
use gapcheck::graph::{parse_graph, Graph};
use gapcheck::spectra::{inner, normalized_spectrum};
use gapcheck::symmetry::{verify_vertex_transitive, Transitivity};
use gapcheck::verdict::{Status, Verdict};
use gapcheck::verifier::{second_bottom_gap_check, second_gap_constant};

/// Connected graphs on `n ∈ [3, 10]`: a random spanning tree plus random
/// extra edges.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (3usize..=10).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
        let extra = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            for ((u, v), keep) in pairs.zip(extra) {
                if keep && !edges.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// A cyclic group `Z_n` with a random symmetric generating set containing 1.
fn circulant() -> impl Strategy<Value = Graph> {
    (3usize..=12).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n / 2).prop_map(move |mask| {
            let z = GroupTable::cyclic(n);
            let mut gens = vec![1, n - 1];
            for (k, keep) in (2..=n / 2).zip(mask) {
                if keep {
                    gens.extend([k, n - k]);
                }
            }
            cayley_graph(&z, &GeneratingSet::new(&z, &gens).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gray_code_matches_naive(g in connected_graph()) {
        let e = cheeger_constant(&g, 24).unwrap();
        let (a, b) = common::naive_cheeger(&g);
        prop_assert_eq!((*e.h.numer(), *e.h.denom()), (a, b));
        let w = Cut::measure(&g, &e.witness.members);
        prop_assert_eq!(w.expansion(), e.h);
    }

    #[test]
    fn partitioning_never_changes_the_result(g in connected_graph(), parts in 1usize..=9) {
        let whole = cheeger_constant(&g, 24).unwrap();
        let split = cheeger_constant_partitioned(&g, 24, parts).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn spectrum_is_well_formed(g in connected_graph()) {
        let s = normalized_spectrum(&g).unwrap();
        let values = s.values();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(values.iter().all(|&m| (-1.0 - 1e-12..=1.0 + 1e-12).contains(&m)));
        prop_assert!((values[values.len() - 1] - 1.0).abs() < 1e-10);
        prop_assert!(values.iter().sum::<f64>().abs() < 1e-9);
        prop_assert_eq!(s.mu_min() <= -1.0 + 1e-9, g.is_bipartite());
        for i in 0..s.len() {
            let norm = inner(s.function(i), s.function(i), &g).unwrap();
            prop_assert!((norm - 1.0).abs() < 1e-9);
        }
        prop_assert_eq!(s.clusters().iter().map(|r| r.len()).sum::<usize>(), g.n());
    }

    #[test]
    fn second_bottom_gap_holds(g in connected_graph()) {
        let s = normalized_spectrum(&g).unwrap();
        let e = cheeger_constant(&g, 24).unwrap();
        let v = second_bottom_gap_check(&g, &s, &e, 1e-9).unwrap();
        prop_assert!(v.holds, "{:?}", v);
    }

    #[test]
    fn vertex_expansion_sandwich(g in connected_graph()) {
        let e = cheeger_constant(&g, 24).unwrap();
        let v = vertex_expansion(&g, 24).unwrap();
        if let Some(d) = g.regular_degree() {
            prop_assert!(e.h_value() <= v.value() + 1e-12);
            prop_assert!(v.value() / d as f64 <= e.h_value() + 1e-12);
        }
        prop_assert!(v.witness.len() * 2 <= g.n());
    }

    #[test]
    fn bound_constant_below_half_gap(h in 1e-6f64..=1.0, gap in 1e-6f64..=2.0) {
        let c = second_gap_constant(h, gap).unwrap();
        prop_assert!(c > 0.0);
        prop_assert!(c <= gap / 2.0);
        prop_assert!((c - common::bisect_c(h, gap)).abs() <= 1e-12 + 1e-9 * c);
    }

    #[test]
    fn bound_constant_monotone(h in 0.01f64..=0.99, gap in 0.01f64..=1.99, dh in 0.0f64..0.01, dg in 0.0f64..0.01) {
        let c = second_gap_constant(h, gap).unwrap();
        prop_assert!(second_gap_constant(h + dh, gap).unwrap() >= c);
        prop_assert!(second_gap_constant(h, gap + dg).unwrap() >= c);
    }

    #[test]
    fn cayley_graphs_are_never_refuted(g in circulant()) {
        prop_assert!(g.regular_degree().is_some());
        prop_assert!(g.is_connected());
        let unflagged = Graph::from_edges(g.n(), g.edges().iter().copied()).unwrap();
        prop_assert_eq!(verify_vertex_transitive(&unflagged, 16), Transitivity::Verified);
    }

    #[test]
    fn edge_list_round_trip(g in connected_graph()) {
        prop_assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn verdict_status_follows_slack(lhs in -2.0f64..2.0, rhs in -2.0f64..2.0, tol in 0.0f64..0.1) {
        let lower = Verdict::at_least("x", "x", lhs, rhs, tol);
        prop_assert_eq!(lower.holds, lower.slack >= -tol);
        prop_assert_eq!(lower.slack, lhs - rhs);
        let upper = Verdict::at_most("x", "x", lhs, rhs, tol);
        prop_assert_eq!(upper.slack, rhs - lhs);
        prop_assert_eq!(upper.status() == Status::Holds, rhs - lhs >= -tol);
    }
}

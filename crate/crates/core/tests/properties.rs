mod common;

use condcolor::cnf::{brute_force_sat, evaluate, normalize_for_reduction, CnfFormula};
use condcolor::coloring::{
    brute_force_chi_r, chi2_low_degree, chi_r, count_colorings, is_valid_coloring, solve_kr,
    ColoringParams, ConditionalColoring, LowDegreeShape, Search,
};
use condcolor::graph::Graph;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=n * (n - 1) / 2).prop_map(move |pairs| {
            let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

fn formula_strategy() -> impl Strategy<Value = CnfFormula> {
    (1usize..=5).prop_flat_map(|n| {
        let literal = (1..=n as i32, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
        prop::collection::vec(prop::collection::vec(literal, 0..=4), 0..=6)
            .prop_map(move |clauses| CnfFormula::new(n, clauses).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sum_is_twice_edge_count(g in graph_strategy(12)) {
        let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn graph_dimacs_round_trip(g in graph_strategy(12)) {
        prop_assert_eq!(Graph::parse_dimacs(&g.to_dimacs()).unwrap(), g);
    }

    #[test]
    fn cnf_dimacs_round_trip(f in formula_strategy()) {
        prop_assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn search_agrees_with_enumeration_and_oracle(g in graph_strategy(7), k in 1usize..=4, r in 1usize..=3) {
        let p = ColoringParams::new(k, r).unwrap();
        let found = Search::new(&g, p).first();
        let any = count_colorings(&g, p) > 0;
        let oracle = brute_force_chi_r(&g, r).unwrap() <= k;
        prop_assert_eq!(found.is_some(), any);
        prop_assert_eq!(any, oracle);
        if let Some(colors) = found {
            prop_assert!(is_valid_coloring(&g, &ConditionalColoring::new(colors, p)));
        }
    }

    #[test]
    fn validity_is_closed_under_color_permutation(g in graph_strategy(8), r in 1usize..=3, shift in 0usize..6) {
        let (k, c) = chi_r(&g, r);
        let perm: Vec<usize> = (0..k).map(|i| (i + shift) % k.max(1)).collect();
        prop_assert!(is_valid_coloring(&g, &c.permuted(&perm)));
    }

    #[test]
    fn chi_is_monotone_in_r(g in graph_strategy(8)) {
        let values: Vec<usize> = (1..=4).map(|r| chi_r(&g, r).0).collect();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]), "{:?}", values);
    }

    #[test]
    fn colorings_survive_weaker_parameters(g in graph_strategy(8), r in 2usize..=3) {
        let (k, c) = chi_r(&g, r);
        let weaker_r = ConditionalColoring::new(c.colors.clone(), ColoringParams::new(k, r - 1).unwrap());
        let more_colors = ConditionalColoring::new(c.colors.clone(), ColoringParams::new(k + 1, r).unwrap());
        prop_assert!(is_valid_coloring(&g, &weaker_r));
        prop_assert!(is_valid_coloring(&g, &more_colors));
    }

    #[test]
    fn normalization_preserves_satisfiability(f in formula_strategy()) {
        let norm = normalize_for_reduction(&f);
        prop_assert!(condcolor::cnf::is_normalized(&norm.formula));
        let before = brute_force_sat(&f).unwrap();
        let after = brute_force_sat(&norm.formula).unwrap();
        prop_assert_eq!(before.is_some(), after.is_some());
        if let Some(model) = after {
            prop_assert!(evaluate(&f, &norm.to_source(&model)));
        }
    }
}

#[test]
fn closed_forms_match_search() {
    for n in 1..=12 {
        assert_eq!(
            chi2_low_degree(n, LowDegreeShape::Path).unwrap(),
            chi_r(&Graph::path(n), 2).0,
            "P{n}"
        );
    }
    for n in 3..=12 {
        assert_eq!(
            chi2_low_degree(n, LowDegreeShape::Cycle).unwrap(),
            chi_r(&Graph::cycle(n), 2).0,
            "C{n}"
        );
    }
}

#[test]
fn solver_handles_every_small_connected_graph() {
    for n in 1..=5 {
        for g in common::all_connected(n) {
            for r in 1..=3 {
                let (k, _) = chi_r(&g, r);
                assert!(solve_kr(&g, ColoringParams::new(k, r).unwrap()).is_some());
                if k > 1 {
                    assert_eq!(
                        count_colorings(&g, ColoringParams::new(k - 1, r).unwrap()),
                        0
                    );
                }
            }
        }
    }
}

mod common;

use condcolor::cnf::{Assignment, CnfFormula};
use condcolor::coloring::{solve_kr, ColoringParams};
use condcolor::gadgets::{
    shipped_fixture_json, shipped_gadget, synthesize_clause_gadget, SynthesisLimits,
};
use condcolor::graph::{verify_hamiltonian_cycle, Graph, HamiltonianWitness};
use condcolor::reductions::{
    extract_assignment, lift_assignment, project_coloring, reduce_3sat_to_32col,
    reduce_ham_3col_to_32col, reduce_kcol_to_krcol, reduce_planar_ham_3col_to_32col,
};

#[test]
fn default_synthesis_reproduces_the_fixture() {
    let gadget = synthesize_clause_gadget(SynthesisLimits::default()).unwrap();
    assert_eq!(gadget.to_fixture_json(), shipped_fixture_json());
}

#[test]
fn tampered_gadget_fails_certification() {
    let mut gadget = shipped_gadget().gadget().clone();
    let edges: Vec<_> = gadget.inner.edges()[1..].to_vec();
    gadget.inner = Graph::from_edge_list(gadget.inner.vertex_count(), &edges).unwrap();
    assert!(gadget.certify().is_err());

    let mut gadget = shipped_gadget().gadget().clone();
    let colors = gadget.witness_table.values_mut().next().unwrap();
    colors[0] = (colors[0] + 1) % 3;
    assert!(gadget.certify().is_err());
}

#[test]
fn projected_colorings_are_proper() {
    let mut rng = common::rng(11);
    for _ in 0..40 {
        let g = common::random_connected(&mut rng, 6);
        for (k, r) in [(3, 2), (4, 2), (4, 3)] {
            let p = ColoringParams::new(k, r).unwrap();
            let art = reduce_kcol_to_krcol(&g, p).unwrap();
            let Some(c) = solve_kr(&art.graph, p) else {
                continue;
            };
            let projected = project_coloring(&art, &c).unwrap();
            assert!(g
                .edges()
                .iter()
                .all(|&(u, v)| projected.colors[u] != projected.colors[v]));
        }
    }
}

#[test]
fn sat3_vertex_count_matches_its_parts() {
    let mut rng = common::rng(12);
    for _ in 0..30 {
        let f = common::random_normalized(&mut rng, 6, 6);
        let art = reduce_3sat_to_32col(&f, shipped_gadget()).unwrap();
        let layout = art.sat3.as_ref().unwrap();
        let (n, m) = (f.var_count, f.clause_count());
        assert_eq!(layout.a_path.len(), 6 * n - 1);
        assert_eq!(layout.b_path.len(), 3 * m - 2);
        let literal: usize = layout
            .pos_paths
            .iter()
            .chain(&layout.neg_paths)
            .map(Vec::len)
            .sum();
        let expected = layout.a_path.len()
            + layout.b_path.len()
            + literal
            + m * shipped_gadget().gadget().size();
        assert_eq!(art.graph.vertex_count(), expected);
        assert!(art.graph.max_degree() <= 3);
        assert!(art.graph.is_triangle_free());
    }
}

#[test]
fn lift_then_extract_is_identity_on_satisfying_assignments() {
    let f = CnfFormula::new(
        4,
        vec![
            vec![1, 2, 3],
            vec![-1, 2, 4],
            vec![1, -3, -4],
            vec![-2, 3, 4],
        ],
    )
    .unwrap();
    let art = reduce_3sat_to_32col(&f, shipped_gadget()).unwrap();
    let mut seen = 0;
    for bits in 0u32..16 {
        let a = Assignment((0..4).map(|i| bits >> i & 1 == 1).collect());
        let Ok(c) = lift_assignment(&art, shipped_gadget(), &a) else {
            continue;
        };
        assert_eq!(extract_assignment(&art, &c).unwrap(), a);
        seen += 1;
    }
    assert!(seen > 0);
}

#[test]
fn lift_rejects_unsatisfying_assignment() {
    let f = CnfFormula::new(3, vec![vec![1, 2, 3], vec![-1, -2, -3]]).unwrap();
    let art = reduce_3sat_to_32col(&f, shipped_gadget()).unwrap();
    assert!(lift_assignment(&art, shipped_gadget(), &Assignment::all(3, true)).is_err());
}

#[test]
fn hamiltonian_outputs_carry_valid_cycles() {
    let mut rng = common::rng(13);
    for n in 3..=9 {
        let (g, w) = common::random_hamiltonian(&mut rng, n);
        let art = reduce_ham_3col_to_32col(&g, &w).unwrap();
        assert!(verify_hamiltonian_cycle(
            &art.graph,
            art.ham_witness.as_ref().unwrap()
        ));
        let (g, w) = common::random_planar_hamiltonian(&mut rng, n);
        let art = reduce_planar_ham_3col_to_32col(&g, &w).unwrap();
        assert_eq!(art.graph.vertex_count(), 5 * n);
        assert!(verify_hamiltonian_cycle(
            &art.graph,
            art.ham_witness.as_ref().unwrap()
        ));
    }
}

#[test]
fn hamiltonian_reduction_rejects_non_cycle() {
    let g = Graph::path(4);
    assert!(reduce_ham_3col_to_32col(&g, &HamiltonianWitness::new(vec![0, 1, 2, 3])).is_err());
}

#[test]
fn bundles_are_deterministic() {
    let g = Graph::petersen();
    let p = ColoringParams::new(4, 2).unwrap();
    let first = reduce_kcol_to_krcol(&g, p).unwrap().bundle_files();
    let second = reduce_kcol_to_krcol(&g, p).unwrap().bundle_files();
    assert_eq!(first, second);

    let f = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
    let a = reduce_3sat_to_32col(&f, shipped_gadget())
        .unwrap()
        .bundle_files();
    let b = reduce_3sat_to_32col(&f, shipped_gadget())
        .unwrap()
        .bundle_files();
    assert_eq!(a, b);
}

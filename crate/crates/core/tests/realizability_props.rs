mod common;

use common::*;
use primegraph_core::graph::{format, least_coloring, LabeledGraph};
use primegraph_core::realizability::OrientationViolation;
use primegraph_core::*;
use proptest::prelude::*;

#[test]
fn c5_with_a_chord_has_girth_three() {
    let mut g = named::cycle(5);
    g.add_edge(0, 2).unwrap();
    assert!(brute_realizable(&g));
    assert!(is_solvable_prime_graph(&g).unwrap().realizable);
    assert_eq!(brute_girth(&g), Some(3));
    assert_eq!(classify_girth(&g).unwrap(), GirthClass::Girth3);
}

#[test]
fn pentagon_and_six_prime_digraphs_are_valid() {
    assert!(validate_frobenius_orientation(&named::pentagon_digraph()).is_empty());
    assert!(validate_frobenius_orientation(&named::six_prime_digraph()).is_empty());
}

#[test]
fn three_arc_chain_is_flagged() {
    let o = format::parse_arc_list("a > b\nb > c\nc > d\n").unwrap();
    let found = validate_frobenius_orientation(&o);
    assert!(found.iter().any(|v| matches!(v, OrientationViolation::DirectedPath3(_))));
}

#[test]
fn verdicts_match_the_definition_on_small_graphs() {
    let all = graph::generate::hereditary_classes(7, 10, |_| true).unwrap();
    for g in all.iter().flatten().filter(|g| !g.is_empty()) {
        let verdict = is_solvable_prime_graph(g).unwrap();
        assert_eq!(verdict.realizable, brute_realizable(g), "{}", format::to_graph6(g));
        if let Some(c) = &verdict.certificate {
            assert!(c.is_proper(&g.complement()) && c.palette_size() <= 3);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coloring_orientations_are_valid(g in realizable_graph(12)) {
        let f = g.complement();
        let c = least_coloring(&f, 3).expect("3-partite complement");
        let o = orient_from_coloring(&f, &c).unwrap();
        prop_assert!(validate_frobenius_orientation(&o).is_empty());
        prop_assert_eq!(o.underlying(), &f);
    }

    #[test]
    fn random_three_partite_complements_are_realizable(g in realizable_graph(12)) {
        prop_assert!(is_solvable_prime_graph(&g).unwrap().realizable);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn realizability_is_isomorphism_invariant((g, perm) in graph_and_permutation(any_graph(9))) {
        let a = is_solvable_prime_graph(&g).unwrap().realizable;
        let b = is_solvable_prime_graph(&g.permuted(&perm)).unwrap().realizable;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn verdict_matches_definition(g in any_graph(9)) {
        prop_assert_eq!(is_solvable_prime_graph(&g).unwrap().realizable, brute_realizable(&g));
    }
}

#[test]
fn empty_graph_is_an_error() {
    assert_eq!(is_solvable_prime_graph(&LabeledGraph::indexed(0).unwrap()), Err(Error::EmptyGraph));
}

mod common;

use proptest::prelude::*;
use vtgraph::catalog::{complete, cycle, path};
use vtgraph::connectivity::vertex_connectivity;
use vtgraph::hamilton::{hamiltonian_cycle, hamiltonian_path, hamiltonian_path_between, low_degree_ham_connected};
use vtgraph::minor::{is_homogeneous_minor, is_minor, verify_homogeneous_witness, verify_minor_witness};

use common::arb_graph;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minor_agrees_with_delete_contract(h in arb_graph(4), g in arb_graph(6)) {
        let minors = common::all_minors(&g);
        let found = is_minor(&h, &g);
        prop_assert_eq!(found.is_some(), common::is_minor_oracle(&h, &minors));
        if let Some(w) = found {
            prop_assert_eq!(verify_minor_witness(&g, &h, &w), Ok(()));
        }
    }

    #[test]
    fn ham_path_agrees_with_permutations(g in arb_graph(7)) {
        let found = hamiltonian_path(&g);
        prop_assert_eq!(found.is_some(), common::ham_path_exists(&g));
        if let Some(c) = found {
            prop_assert!(c.verify(&g).is_ok());
        }
    }

    #[test]
    fn ham_cycle_agrees_with_permutations(g in arb_graph(7)) {
        prop_assume!(g.order() >= 3);
        let found = hamiltonian_cycle(&g).unwrap();
        prop_assert_eq!(found.is_some(), common::ham_cycle_exists(&g));
        if let Some(c) = found {
            prop_assert!(c.verify(&g).is_ok());
        }
    }

    #[test]
    fn ham_between_agrees_with_permutations(g in arb_graph(7), x in 0usize..7, y in 0usize..7) {
        prop_assume!(x < g.order() && y < g.order() && x != y);
        let found = hamiltonian_path_between(&g, x, y).unwrap();
        prop_assert_eq!(found.is_some(), common::ham_path_between_exists(&g, x, y));
        if let Some(c) = found {
            prop_assert!(c.verify(&g).is_ok());
            prop_assert_eq!((c.first(), c.last()), (Some(x), Some(y)));
            // A path between two vertices is in particular a Hamiltonian path.
            prop_assert!(hamiltonian_path(&g).is_some());
        }
    }

    #[test]
    fn connectivity_agrees_with_brute_force(g in arb_graph(8)) {
        let c = vertex_connectivity(&g);
        prop_assert_eq!(c.kappa, common::vertex_connectivity(&g));
        if let Some(cut) = c.cut {
            prop_assert_eq!(cut.len(), c.kappa);
            prop_assert!(!g.is_connected_within(g.vertices().difference(cut)));
        }
    }

    #[test]
    fn homogeneous_witnesses_verify(g in arb_graph(8), k in 1usize..=3) {
        let hp = path(k).unwrap();
        let h = complete(2).unwrap();
        if let Some(w) = is_homogeneous_minor(&h, &hp, &g).unwrap() {
            prop_assert_eq!(verify_homogeneous_witness(&g, &h, &hp, &w), Ok(()));
        }
    }
}

#[test]
fn low_degree_pairs_match_direct_checks() {
    for g in common::all_graphs(5).into_iter().filter(|g| g.is_connected()) {
        let d = g.degrees().into_iter().max().unwrap_or(0) + 1;
        let low: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) < 3.min(d)).collect();
        let expected = low
            .iter()
            .enumerate()
            .all(|(i, &x)| low[i + 1..].iter().all(|&y| common::ham_path_between_exists(&g, x, y)));
        assert_eq!(low_degree_ham_connected(&g, 3.min(d)).unwrap().holds(), expected, "{g:?}");
    }
}

#[test]
fn cycle_minors_of_cycles() {
    for p in [3, 5, 7] {
        for q in [3, 5, 7, 9] {
            assert_eq!(is_minor(&cycle(p).unwrap(), &cycle(q).unwrap()).is_some(), p <= q, "C_{p} in C_{q}");
        }
    }
}

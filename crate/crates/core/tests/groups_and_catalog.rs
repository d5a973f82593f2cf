mod common;

use itertools::Itertools;
use vtgraph::catalog::{circulant, family, petersen, prism, vt_catalog};
use vtgraph::cayley::{cayley_graph, connection_sets, is_cayley, right_translation, transitive_witness};
use vtgraph::group::{builtin_groups, groups_of_order, FiniteGroup};
use vtgraph::iso::{are_isomorphic, is_vertex_transitive};

#[test]
fn builtin_groups_are_pairwise_non_isomorphic() {
    let groups = builtin_groups(16);
    for (a, b) in groups.iter().tuple_combinations() {
        if a.order() == b.order() {
            assert!(!common::groups_isomorphic(a, b), "{} and {} are isomorphic", a.name(), b.name());
        }
    }
}

#[test]
fn isomorphism_oracle_sees_equal_presentations() {
    let z6 = FiniteGroup::cyclic(6).unwrap();
    let z2xz3 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(3).unwrap()).unwrap();
    assert!(common::groups_isomorphic(&z6, &z2xz3));
    let d3 = FiniteGroup::dihedral(3).unwrap();
    let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
    assert!(common::groups_isomorphic(&d3, &s3));
    assert!(!common::groups_isomorphic(&z6, &d3));
}

#[test]
fn group_text_round_trip() {
    for g in builtin_groups(8) {
        let parsed: FiniteGroup = g.to_string().parse().unwrap();
        assert_eq!(parsed.rows(), g.rows(), "{}", g.name());
    }
}

#[test]
fn right_translations_move_any_vertex_anywhere() {
    for group in builtin_groups(8) {
        let sets = connection_sets(&group);
        for c in sets.iter().step_by(3) {
            let x = cayley_graph(&group, c);
            for g in 0..group.order() {
                assert!(right_translation(&group, g).unwrap().is_automorphism_of(&x));
            }
            for (a, b) in (0..group.order()).tuple_combinations() {
                assert_eq!(transitive_witness(&group, a, b).unwrap().image(a), b);
            }
        }
    }
}

// Vertex-transitive graphs per order, including disconnected ones.
const VT_CENSUS: [usize; 14] = [1, 2, 2, 4, 3, 8, 4, 14, 9, 22, 8, 74, 14, 56];

#[test]
fn catalog_matches_the_census() {
    let cat = vt_catalog(14).unwrap();
    for (n, &expected) in (1..=14).zip(VT_CENSUS.iter()) {
        let count = cat.iter().filter(|e| e.graph.order() == n).count();
        assert_eq!(count, expected, "order {n}");
    }
}

#[test]
fn catalog_entries_are_distinct_and_transitive() {
    let cat = vt_catalog(10).unwrap();
    for e in &cat {
        assert!(is_vertex_transitive(&e.graph).0, "{}", e.name);
    }
    for (a, b) in cat.iter().tuple_combinations() {
        if a.graph.order() == b.graph.order() && a.graph.edge_count() == b.graph.edge_count() {
            assert!(are_isomorphic(&a.graph, &b.graph).is_none(), "{} ~ {}", a.name, b.name);
        }
    }
    let names: std::collections::HashSet<_> = cat.iter().map(|e| &e.name).collect();
    assert_eq!(names.len(), cat.len());
}

#[test]
fn catalog_is_reproducible() {
    let a: Vec<String> = vt_catalog(9).unwrap().into_iter().map(|e| e.name).collect();
    let b: Vec<String> = vt_catalog(9).unwrap().into_iter().map(|e| e.name).collect();
    assert_eq!(a, b);
}

#[test]
fn small_catalog_contents() {
    let cat = vt_catalog(5).unwrap();
    let has = |g: &vtgraph::Graph| cat.iter().any(|e| are_isomorphic(&e.graph, g).is_some());
    for spec in [("cycle", 3), ("cycle", 4), ("complete", 4), ("edgeless", 4), ("cycle", 5), ("complete", 5)] {
        assert!(has(&family(spec.0, &[spec.1]).unwrap()), "{spec:?}");
    }
    let two_k2 = family("complete", &[2]).unwrap().disjoint_union(&family("complete", &[2]).unwrap()).unwrap();
    assert!(has(&two_k2));
    assert_eq!(cat.iter().filter(|e| e.graph.order() == 5).count(), 3);
}

#[test]
fn named_family_checks() {
    let p = petersen();
    // Girth 5: no triangles and no 4-cycles.
    for (a, b, c) in (0..10).tuple_combinations() {
        assert!(!(p.has_edge(a, b) && p.has_edge(b, c) && p.has_edge(a, c)));
    }
    for (a, b) in (0..10).tuple_combinations() {
        assert!(p.neighbors(a).intersection(p.neighbors(b)).len() <= 1);
    }
    assert!(are_isomorphic(&circulant(6, &[2, 3]).unwrap(), &prism(3).unwrap()).is_some());
}

#[test]
fn petersen_is_not_cayley() {
    assert!(is_cayley(&petersen(), &groups_of_order(10)).unwrap().is_none());
    let c10 = family("cycle", &[10]).unwrap();
    let (g, c) = is_cayley(&c10, &groups_of_order(10)).unwrap().unwrap();
    assert!(are_isomorphic(&cayley_graph(&g, &c), &c10).is_some());
}

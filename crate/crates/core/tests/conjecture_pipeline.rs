use proptest::prelude::*;
use vtgraph::catalog::{circulant, connected_vt_catalog, cycle, edgeless, hypercube, petersen, rook};
use vtgraph::conjecture::{
    check_certificate, classify, compose_hamiltonian_path, find_decomposition, survey, Case, DecompositionEvidence,
    Status,
};
use vtgraph::hamilton::{arithmetic_ham_cycle, circulant_representation, hamiltonian_cycle};
use vtgraph::minor::verify_homogeneous_witness;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scrambled_circulants_are_recognised(
        p in prop::sample::select(vec![5usize, 7, 11, 13]),
        jumps in prop::collection::vec(1usize..13, 1..4),
        seed in Just(()).prop_flat_map(|_| Just((0..13usize).collect::<Vec<_>>()).prop_shuffle()),
    ) {
        let jumps: Vec<usize> = jumps.into_iter().map(|j| j % p).filter(|&j| j != 0).collect();
        prop_assume!(!jumps.is_empty());
        let perm: Vec<usize> = seed.into_iter().filter(|&v| v < p).collect();
        let x = circulant(p, &jumps).unwrap().relabel(&perm).unwrap();
        let form = circulant_representation(&x).unwrap();
        prop_assert!(form.verify(&x));
        let cert = arithmetic_ham_cycle(&form).unwrap();
        prop_assert!(cert.closed);
        prop_assert!(cert.verify(&x).is_ok());
    }
}

#[test]
fn decompositions_found_always_check() {
    for e in connected_vt_catalog(10).unwrap() {
        let n = e.graph.order();
        if n <= 1 || vtgraph::minor::is_prime(n) {
            continue;
        }
        match find_decomposition(&e.graph).unwrap() {
            Some(DecompositionEvidence::Decomposition { certificate }) => {
                assert_eq!(check_certificate(&certificate), Ok(()), "{}", e.name);
                compose_hamiltonian_path(&certificate).unwrap().verify(&e.graph).unwrap();
            }
            Some(DecompositionEvidence::CyclePair { m, n, witness }) => {
                let (cm, cn) = (cycle(m).unwrap(), cycle(n).unwrap());
                assert_eq!(verify_homogeneous_witness(&e.graph, &cm, &cn, &witness), Ok(()), "{}", e.name);
            }
            None => {}
        }
    }
}

#[test]
fn spec_graphs_classify() {
    let q3 = hypercube(3).unwrap();
    let r = classify("q3", &q3).unwrap();
    assert!(r.case.is_resolved());
    r.ham.unwrap().verify(&q3).unwrap();

    let rk = rook(3, 3).unwrap();
    let r = classify("rook", &rk).unwrap();
    assert_eq!((r.case, r.m, r.n), (Case::CyclePair, Some(3), Some(3)));
    r.ham.unwrap().verify(&rk).unwrap();

    let r = classify("e4", &edgeless(4).unwrap()).unwrap();
    assert_eq!(r.status, Status::NoPath);
}

#[test]
fn prime_order_paths_are_opened_cycles() {
    for p in [3, 5, 7, 11] {
        let x = circulant(p, &[1, 2]).unwrap();
        let r = classify("c", &x).unwrap();
        assert_eq!(r.case, Case::PrimeOrder);
        let mut h = r.ham.unwrap();
        h.closed = true;
        h.verify(&x).unwrap();
    }
}

#[test]
fn petersen_is_reported_honestly() {
    let p = petersen();
    assert!(hamiltonian_cycle(&p).unwrap().is_none());
    let r = classify("petersen", &p).unwrap();
    // A valid path is required either way; the case records which argument produced it.
    r.ham.as_ref().unwrap().verify(&p).unwrap();
    if r.case == Case::Unresolved {
        assert_eq!(r.status, Status::VerifiedBySearch);
    }
}

#[test]
fn survey_up_to_ten_has_paths_or_flags() {
    let graphs: Vec<_> = connected_vt_catalog(10).unwrap().into_iter().map(|e| (e.name, e.graph)).collect();
    let report = survey(&graphs, None, 4);
    assert_eq!(report.errors, 0);
    for (r, (_, g)) in report.reports().zip(&graphs) {
        match &r.ham {
            Some(h) => h.verify(g).unwrap(),
            None => assert_eq!(r.case, Case::Unresolved, "{}", r.graph_id),
        }
    }
    let total: usize = report.counts.iter().map(|(_, k)| k).sum();
    assert_eq!(total, graphs.len());
}

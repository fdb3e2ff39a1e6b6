use macdonald_core::exactfield::{LaurentPoly, Weight};
use macdonald_core::kadell::{
    delta_factor, verify_anti_product, verify_iota_mu, verify_jack_kadell, verify_kadell_i, verify_kadell_ii,
    verify_psi_conj, Outcome, Parity,
};
use macdonald_core::rootdata::{build_root_system, RootSystem};
use macdonald_core::symfun::{monomial_symmetric, symmetry_type, SymPoly, Symmetry};

const RANK_TWO: [&str; 4] = ["A2", "B2", "C2", "G2"];

/// Every `m` with entries in `0..=max`, one entry per root length.
fn shifts(sys: &RootSystem, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..sys.num_classes() {
        out = out
            .into_iter()
            .flat_map(|m| (0..=max).map(move |v| [m.clone(), vec![v]].concat()))
            .collect();
    }
    out
}

fn delta_consistency(label: &str, h: i64) {
    let sys = build_root_system(label).unwrap();
    let m = vec![1; sys.num_classes()];
    for b in sys.dominant_up_to(h) {
        let v = verify_kadell_i(&sys, &b, &m);
        assert!(v.passed(), "{:?}", v);
    }
}

#[test]
fn delta_consistency_a() {
    delta_consistency("A1", 3);
    delta_consistency("A2", 3);
}

#[test]
fn delta_consistency_b2() {
    delta_consistency("B2", 3);
}

#[test]
fn delta_consistency_c2() {
    delta_consistency("C2", 3);
}

#[test]
fn delta_consistency_g2_at_zero() {
    delta_consistency("G2", 0);
}

#[test]
fn odd_delta_is_antisymmetric() {
    for label in ["A1"].into_iter().chain(RANK_TWO) {
        let sys = build_root_system(label).unwrap();
        for m in shifts(&sys, 1) {
            let d = delta_factor(&sys, &m, Parity::Odd).unwrap();
            assert_eq!(symmetry_type(&sys, &d.value), Symmetry::Antisymmetric, "{} m = {:?}", label, m);
        }
    }
}

#[test]
fn even_delta_is_symmetric() {
    for label in ["A1"].into_iter().chain(RANK_TWO) {
        let sys = build_root_system(label).unwrap();
        for m in shifts(&sys, 1) {
            let d = delta_factor(&sys, &m, Parity::Even).unwrap();
            assert_eq!(symmetry_type(&sys, &d.value), Symmetry::Symmetric, "{} m = {:?}", label, m);
        }
    }
}

#[test]
fn jack_counterpart_on_the_same_set() {
    for label in ["A1"].into_iter().chain(RANK_TWO) {
        let sys = build_root_system(label).unwrap();
        let m = vec![1; sys.num_classes()];
        for b in sys.dominant_up_to(3) {
            let v = verify_jack_kadell(&sys, &b, &m);
            assert!(v.passed(), "{:?}", v);
        }
    }
}

#[test]
fn part_two_with_two_lengths() {
    let sys = build_root_system("B2").unwrap();
    for b in sys.dominant_up_to(2) {
        let v = verify_kadell_ii(&sys, &b, &[0, 0]);
        assert!(v.passed(), "{:?}", v);
    }
}

#[test]
fn anti_product_rank_two() {
    for label in RANK_TWO {
        let sys = build_root_system(label).unwrap();
        for m in shifts(&sys, 2).into_iter().filter(|m| m.iter().all(|&v| v > 0)) {
            let v = verify_anti_product(&sys, &m);
            assert!(v.passed(), "{:?}", v);
        }
    }
}

#[test]
fn iota_mu_with_two_lengths() {
    let sys = build_root_system("B2").unwrap();
    let tests: Vec<LaurentPoly> = [Weight::zero(), sys.coweight(0), sys.coweight(1)]
        .iter()
        .map(|b| monomial_symmetric(&sys, b).unwrap())
        .chain([LaurentPoly::monomial(sys.coweight(1))])
        .collect();
    let v = verify_iota_mu(&sys, 1, &tests);
    assert!(v.passed(), "{:?}", v);
}

#[test]
fn psi_conjugation_rank_two() {
    for label in ["A2", "B2"] {
        let sys = build_root_system(label).unwrap();
        let tests: Vec<SymPoly> = sys.dominant_up_to(1).into_iter().map(SymPoly::basis).collect();
        for g in 0..sys.rank {
            for k in 1..=2 {
                let v = verify_psi_conj(&sys, &SymPoly::basis(sys.coweight(g)), k, &tests);
                assert!(v.passed(), "{:?}", v);
            }
        }
    }
}

#[test]
fn anti_product_skips_an_empty_length() {
    let sys = build_root_system("B2").unwrap();
    for m in [[0, 1], [1, 0]] {
        assert_eq!(verify_anti_product(&sys, &m).result, Outcome::Skipped);
    }
}

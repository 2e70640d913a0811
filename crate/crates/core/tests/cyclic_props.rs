use ainf_core::bar::ComplexWindow;
use ainf_core::classical::ClassicalAlgebra;
use ainf_core::cyclic::traces::{closed_graded_traces, is_closed_trace};
use ainf_core::cyclic::CyclicComplexes;
use ainf_core::error::Error;
use ainf_core::exactlin::SparseMatrix;
use ainf_core::fixtures;
use ainf_core::scalar::q;
use proptest::prelude::*;

fn window(w: usize) -> ComplexWindow {
    ComplexWindow::new(w, 4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bicomplex_identities(seed in 0u64..10_000) {
        let a = fixtures::random_algebra(seed);
        let cx = CyclicComplexes::new(&a, window(6)).unwrap();
        for n in 1..4 {
            let (b, bp) = (cx.b(n).unwrap(), cx.b_prime(n).unwrap());
            let oml = cx.one_minus_lambda(n).unwrap();
            prop_assert!(cx.b(n - 1).unwrap().mul(&b).is_zero());
            prop_assert!(cx.b_prime(n - 1).unwrap().mul(&bp).is_zero());
            prop_assert!(b.mul(&oml).sub(&cx.one_minus_lambda(n - 1).unwrap().mul(&bp)).is_zero());
            prop_assert!(bp.mul(&cx.norm(n).unwrap()).sub(&cx.norm(n - 1).unwrap().mul(&b)).is_zero());
            prop_assert!(cx.norm(n).unwrap().mul(&oml).is_zero());
            let bb = cx.connes_b(n).unwrap();
            prop_assert!(cx.connes_b(n + 1).unwrap().mul(&bb).is_zero());
            prop_assert!(cx.b(n + 1).unwrap().mul(&bb).add(&cx.connes_b(n - 1).unwrap().mul(&b)).is_zero());
        }
    }

    #[test]
    fn contraction_is_a_homotopy_to_the_identity(seed in 0u64..10_000) {
        let a = fixtures::random_algebra(seed);
        let cx = CyclicComplexes::new(&a, window(6)).unwrap();
        for n in 1..4 {
            let h = cx.b_prime(n + 1).unwrap().mul(&cx.contraction(n).unwrap())
                .add(&cx.contraction(n - 1).unwrap().mul(&cx.b_prime(n).unwrap()));
            prop_assert!(h.sub(&SparseMatrix::identity(cx.piece(n).unwrap().len())).is_zero());
        }
    }

    #[test]
    fn tot_squares_to_zero(seed in 0u64..10_000) {
        let a = fixtures::random_algebra(seed);
        let cx = CyclicComplexes::new(&a, window(6)).unwrap();
        for n in 1..5 {
            prop_assert!(cx.tot(n - 1).unwrap().mul(&cx.tot(n).unwrap()).is_zero());
        }
    }

    #[test]
    fn three_models_of_cyclic_homology_agree(seed in 0u64..10_000) {
        let a = fixtures::random_algebra(seed);
        let w = window(6);
        let cx = CyclicComplexes::new(&a, w).unwrap();
        for n in 0..=w.reliable_bound() {
            let hc = cx.hc_dim(n).unwrap();
            prop_assert_eq!(hc, cx.hc_lambda_dim(n).unwrap());
            prop_assert_eq!(hc, cx.hc_bb_dim(n).unwrap());
        }
    }
}

#[test]
fn ground_field_cyclic_homology() {
    let cx = CyclicComplexes::new(&fixtures::ground_field(), window(8)).unwrap();
    let hc: Vec<usize> = (0..=6).map(|n| cx.hc_dim(n).unwrap()).collect();
    assert_eq!(hc, vec![1, 0, 1, 0, 1, 0, 1]);
    let hh: Vec<usize> = (0..=6).map(|n| cx.hh_dim(n).unwrap()).collect();
    assert_eq!(hh, vec![1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(cx.hp(0).unwrap().dim, Some(1));
    assert_eq!(cx.hp(1).unwrap().dim, Some(0));
}

#[test]
fn dual_numbers_cyclic_homology() {
    // Over Q, HC_n(K[e]/e^2) is K ⊕ K in even degrees and 0 in odd ones.
    let cx = CyclicComplexes::new(&fixtures::dual_numbers(), window(7)).unwrap();
    let hc: Vec<usize> = (0..=5).map(|n| cx.hc_dim(n).unwrap()).collect();
    assert_eq!(hc, vec![2, 0, 2, 0, 2, 0]);
    assert_eq!(cx.hp(0).unwrap().dim, Some(1));
    assert_eq!(cx.hp(1).unwrap().dim, Some(0));
}

#[test]
fn matches_classical_oracle() {
    let algebras = [
        fixtures::dual_numbers(),
        fixtures::truncated_polynomial(3),
        fixtures::product_of_fields(),
        fixtures::upper_triangular(),
    ];
    for a in algebras {
        let cx = CyclicComplexes::new(&a, window(6)).unwrap();
        let oracle = ClassicalAlgebra::from_ainf(&a).unwrap();
        for n in 0..=4 {
            assert_eq!(cx.hh_dim(n).unwrap(), oracle.hh_dim(n));
            assert_eq!(cx.hc_dim(n).unwrap(), oracle.hc_dim(n));
        }
    }
}

#[test]
fn traces_compute_cyclic_cohomology_in_degree_zero() {
    for (name, a) in fixtures::named() {
        let cx = CyclicComplexes::new(&a, window(4)).unwrap();
        let traces = closed_graded_traces(&a);
        assert_eq!(traces.len(), cx.hc_cohomology_dim(0).unwrap(), "{name}");
        assert!(traces.iter().all(|t| is_closed_trace(&a, t)));
    }
    let m2 = fixtures::matrix_algebra();
    assert_eq!(closed_graded_traces(&m2).len(), 1);
    assert!(!is_closed_trace(&m2, &[q(0), q(0), q(1), q(0)]));
}

#[test]
fn sbi_sequence_is_exact() {
    for (name, a) in fixtures::named() {
        let cx = CyclicComplexes::new(&a, window(7)).unwrap();
        for node in cx.sbi_check(4).unwrap() {
            assert!(node.exact, "{name} {}", node.node);
        }
    }
}

#[test]
fn reliability_bound_is_enforced() {
    let cx = CyclicComplexes::new(&fixtures::ground_field(), window(4)).unwrap();
    assert!(cx.hc_dim(2).is_ok());
    assert!(matches!(cx.hc_dim(3), Err(Error::WindowExceeded(_))));
    assert!(matches!(cx.hp(1), Err(Error::WindowExceeded(_))));
}

#[test]
fn zero_algebra_has_no_homology() {
    let cx = CyclicComplexes::new(&fixtures::zero_algebra(), window(4)).unwrap();
    assert!((0..=2).all(|n| cx.hc_dim(n).unwrap() == 0 && cx.hh_dim(n).unwrap() == 0));
}

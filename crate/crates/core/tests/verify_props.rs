use ainf_core::bar::ComplexWindow;
use ainf_core::cochain::Cochain;
use ainf_core::cyclic::CyclicComplexes;
use ainf_core::error::Error;
use ainf_core::fixtures;
use ainf_core::scalar::q;
use ainf_core::specfile::{parse_spec_str, to_spec};
use ainf_core::verify::{
    boundary_ideal, degree_one_contractible_ideal, h0, homology_algebra, is_derivation,
    is_equivalence, lie_derivative_after_s_rank, quotient, verify_equivalence_invariance,
    verify_hp_of_h0, verify_lie_derivative, verify_nilpotent_quotient, AInfinityIdeal, Derivation,
    Status, StrictMorphism,
};
use ainf_core::AInfinityAlgebra;

/// DG algebra from labels by degree, a differential and the plain products
/// among non-unit elements; `1` is the unit.
fn dg(labels: &[&[&str]], d: &[(&str, &str)], products: &[(&str, &str, &str)]) -> AInfinityAlgebra {
    let all: Vec<&str> = labels.iter().flat_map(|r| r.iter().copied()).collect();
    let entry = |i: &[&str], o: &str| format!(r#"{{"inputs":{:?},"output":"{o}","coeff":"1"}}"#, i);
    let mut m2: Vec<String> = Vec::new();
    for x in &all {
        m2.push(entry(&["1", x], x));
        if *x != "1" {
            m2.push(entry(&[x, "1"], x));
        }
    }
    m2.extend(products.iter().map(|(a, b, c)| entry(&[a, b], c)));
    let m1: Vec<String> = d.iter().map(|(a, b)| entry(&[a], b)).collect();
    let dims: Vec<usize> = labels.iter().map(|r| r.len()).collect();
    let text = format!(
        r#"{{"field":"Q","dims":{dims:?},"labels":{labels:?},"unit":"1","convention":"dg",
            "ops":{{"1":[{}],"2":[{}]}}}}"#,
        m1.join(","),
        m2.join(",")
    );
    parse_spec_str(&text).unwrap().algebra
}

fn window(w: usize) -> ComplexWindow {
    ComplexWindow::new(w, 4).unwrap()
}

#[test]
fn derivation_examples() {
    let eps = fixtures::dual_numbers();
    assert!(is_derivation(eps.m(), &eps).holds);
    assert!(is_derivation(&fixtures::euler_derivation(), &eps).holds);
    let m2 = fixtures::matrix_algebra();
    assert!(is_derivation(&fixtures::inner_derivation_m2(), &m2).holds);

    // The identity on `1` is not a derivation: `D(1·1) ≠ D(1)·1 + 1·D(1)`.
    let mut bad = Cochain::zero(0);
    bad.add(&[0], 0, q(1));
    let check = is_derivation(&bad, &eps);
    assert!(!check.holds);
    assert!(check.witness.is_some());
    assert!(matches!(
        Derivation::new(&eps, bad),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn homology_algebras() {
    let h = homology_algebra(&fixtures::dg_fixture()).unwrap();
    assert_eq!(h.algebra.dim(), 1);
    assert_eq!(h.representatives.len(), 1);
    let h = homology_algebra(&fixtures::truncated_polynomial(3)).unwrap();
    assert_eq!(h.algebra.dim(), 3);
    let h = homology_algebra(&fixtures::graded_dual_numbers()).unwrap();
    assert_eq!(h.algebra.space().dims_from_zero(), vec![1, 1]);
    assert_eq!(h0(&fixtures::dg_square_zero_extension()).unwrap().dim(), 2);
}

#[test]
fn extreme_quotients() {
    let a = fixtures::truncated_polynomial(3);
    let zero = AInfinityIdeal::new(&a, &[]).unwrap();
    let (b, f) = quotient(&a, &zero).unwrap();
    assert_eq!(b.dim(), a.dim());
    assert!(is_equivalence(&f).unwrap());

    let all = AInfinityIdeal::spanned_by(&a, &[0, 1, 2]).unwrap();
    let (b, f) = quotient(&a, &all).unwrap();
    assert_eq!(b.dim(), 0);
    assert!(!is_equivalence(&f).unwrap());
}

#[test]
fn non_ideals_are_rejected() {
    let a = fixtures::truncated_polynomial(3);
    // `x` does not absorb `x · x = x²`.
    assert!(AInfinityIdeal::spanned_by(&a, &[1]).is_err());
    assert!(AInfinityIdeal::spanned_by(&a, &[2]).is_ok());
    // The positive part `{y}` of `{1, x | y}` is not closed under `m_1 y = x`.
    assert!(AInfinityIdeal::positive_part(&fixtures::dg_fixture()).is_err());
}

#[test]
fn equivalences() {
    let a = fixtures::dg_fixture();
    assert!(is_equivalence(&StrictMorphism::identity(&a)).unwrap());
    let j = degree_one_contractible_ideal(&a).unwrap();
    assert_eq!(j.dim(), 2);
    let (b, f) = quotient(&a, &j).unwrap();
    assert_eq!(b.dim(), 1);
    assert!(is_equivalence(&f).unwrap());

    // Killing the class of `x` in `K[x]/x³` is not an equivalence.
    let p = fixtures::truncated_polynomial(3);
    let (_, g) = quotient(&p, &AInfinityIdeal::spanned_by(&p, &[2]).unwrap()).unwrap();
    assert!(!is_equivalence(&g).unwrap());
}

#[test]
fn nested_quotient_dimensions() {
    let a = fixtures::dg_square_zero_extension();
    let j = degree_one_contractible_ideal(&a).unwrap();
    let (b, _) = quotient(&a, &j).unwrap();
    assert_eq!(b.dim(), a.dim() - j.dim());
    let i = AInfinityIdeal::positive_part(&b).unwrap();
    let (c, _) = quotient(&b, &i).unwrap();
    assert_eq!(c.dim(), b.dim() - i.dim());
    assert_eq!(c.dim(), h0(&a).unwrap().dim());
}

/// With `dy₁ = dy₂ = x`, `m_1` is not injective on degree 1. Quotienting by
/// `Im m_1` alone leaves both `y`s as cycles, while `J` removes one of them.
#[test]
fn boundary_ideal_alone_is_not_an_equivalence() {
    let a = dg(
        &[&["1", "x"], &["y1", "y2"]],
        &[("y1", "x"), ("y2", "x")],
        &[],
    );
    let lit = boundary_ideal(&a).unwrap();
    assert_eq!(lit.dim(), 1);
    let (_, f) = quotient(&a, &lit).unwrap();
    assert!(!is_equivalence(&f).unwrap());
    let (b, g) = quotient(&a, &degree_one_contractible_ideal(&a).unwrap()).unwrap();
    assert!(is_equivalence(&g).unwrap());
    assert_eq!(b.space().dims_from_zero(), vec![1, 1]);
}

#[test]
fn hp_of_h0_routes_agree() {
    let cases = [
        ("K", fixtures::ground_field()),
        ("K[e]/e^2", fixtures::dual_numbers()),
        ("KxK", fixtures::product_of_fields()),
        ("DG", fixtures::dg_fixture()),
        ("graded dual numbers", fixtures::graded_dual_numbers()),
    ];
    for (name, a) in cases {
        let r = verify_hp_of_h0(&a, ComplexWindow::new(7, 4).unwrap()).unwrap();
        assert_eq!(r.status, Status::Pass, "{name}\n{}", r.table());
    }
}

#[test]
fn equivalence_invariance_and_nilpotent_quotient() {
    let a = fixtures::dg_fixture();
    let (_, f) = quotient(&a, &degree_one_contractible_ideal(&a).unwrap()).unwrap();
    assert_eq!(
        verify_equivalence_invariance(&f, window(7)).unwrap().status,
        Status::Pass
    );

    let g = fixtures::graded_dual_numbers();
    let i = AInfinityIdeal::positive_part(&g).unwrap();
    assert_eq!(
        verify_nilpotent_quotient(&g, &i, window(7)).unwrap().status,
        Status::Pass
    );
    let p = fixtures::truncated_polynomial(3);
    let bad = AInfinityIdeal::spanned_by(&p, &[2]).unwrap();
    assert!(matches!(
        verify_nilpotent_quotient(&p, &bad, window(7)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn lie_derivative_after_s_vanishes() {
    let a = fixtures::dual_numbers();
    let d = Derivation::new(&a, fixtures::euler_derivation()).unwrap();
    let cx = CyclicComplexes::new(&a, window(6)).unwrap();
    for n in 2..=4 {
        assert_eq!(
            lie_derivative_after_s_rank(&cx, &d, n).unwrap(),
            0,
            "n = {n}"
        );
    }
    assert_eq!(
        verify_lie_derivative(&a, &d, window(7)).unwrap().status,
        Status::Pass
    );
}

#[test]
fn spec_round_trip() {
    for (name, a) in fixtures::named() {
        let text = serde_json::to_string_pretty(&to_spec(&a, Some(name))).unwrap();
        assert_eq!(parse_spec_str(&text).unwrap().algebra, a, "{name}");
    }
    let built = dg(&[&["1", "x"], &["y"]], &[("y", "x")], &[]);
    assert_eq!(built, fixtures::dg_fixture());
}

#[test]
fn spec_errors() {
    let bad_json = parse_spec_str("{\"field\": \"Q\",\n \"dims\": [1,}");
    assert!(matches!(bad_json, Err(Error::Parse(ref m)) if m.contains("line 2")));
    let bad_degree = parse_spec_str(
        r#"{"field":"Q","dims":[1,1],"labels":[["1"],["y"]],
            "ops":{"2":[{"inputs":["y","y"],"output":"1","coeff":"1"}]}}"#,
    );
    assert!(matches!(bad_degree, Err(Error::Degree(_))));
    let bad_label = parse_spec_str(
        r#"{"field":"Q","dims":[1],"labels":[["1"]],
            "ops":{"2":[{"inputs":["1","z"],"output":"1","coeff":"1"}]}}"#,
    );
    assert!(matches!(bad_label, Err(Error::Parse(ref m)) if m.contains("ops.2[0]")));
    let bad_field = parse_spec_str(r#"{"field":"F2","dims":[],"labels":[],"ops":{}}"#);
    assert!(matches!(bad_field, Err(Error::Parse(_))));
    let unknown = parse_spec_str(r#"{"field":"Q","dims":[],"labels":[],"ops":{},"extra":1}"#);
    assert!(unknown.is_err());
}

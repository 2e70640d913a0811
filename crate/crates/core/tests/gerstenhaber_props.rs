use ainf_core::bar::{BarCoalgebra, ComplexWindow};
use ainf_core::cochain::{random_cochain, Cochain};
use ainf_core::exactlin::dense;
use ainf_core::fixtures;
use ainf_core::gerstenhaber::{
    deformation_differential, hochschild_cohomology_dim, CupStructure, DeformationComplex,
};
use ainf_core::scalar::{q, sign};
use ainf_core::AInfinityAlgebra;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn draw(a: &AInfinityAlgebra, rng: &mut ChaCha8Rng) -> Cochain {
    let k: i64 = rng.gen_range(-1..=1);
    random_cochain(a.basis(), k, 1..=3, 0.3, rng)
}

fn triple(seed: u64) -> (AInfinityAlgebra, Cochain, Cochain, Cochain) {
    let a = fixtures::random_algebra(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (x, y, z) = (draw(&a, &mut rng), draw(&a, &mut rng), draw(&a, &mut rng));
    (a, x, y, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bracket_antisymmetry(seed in 0u64..10_000) {
        let (a, x, y, _) = triple(seed);
        let b = a.basis();
        let lhs = x.bracket(&y, b);
        let rhs = y.bracket(&x, b).scale(&-sign(x.sdeg() * y.sdeg()));
        prop_assert!(lhs.minus(&rhs).unwrap().is_zero());
    }

    #[test]
    fn cyclic_jacobi(seed in 0u64..10_000) {
        let (a, x, y, z) = triple(seed);
        let b = a.basis();
        let (kx, ky, kz) = (x.sdeg(), y.sdeg(), z.sdeg());
        let sum = x.bracket(&y.bracket(&z, b), b).scale(&sign(kx * kz))
            .plus(&y.bracket(&z.bracket(&x, b), b).scale(&sign(ky * kx))).unwrap()
            .plus(&z.bracket(&x.bracket(&y, b), b).scale(&sign(kz * ky))).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn delta_squares_to_zero(seed in 0u64..10_000) {
        let (a, x, _, _) = triple(seed);
        let dx = deformation_differential(&x, &a);
        prop_assert!(deformation_differential(&dx, &a).is_zero());
    }

    #[test]
    fn delta_is_a_derivation(seed in 0u64..10_000) {
        let (a, x, y, _) = triple(seed);
        let b = a.basis();
        let d = |c: &Cochain| deformation_differential(c, &a);
        let lhs = d(&x.bracket(&y, b));
        let rhs = d(&x).bracket(&y, b).plus(&x.bracket(&d(&y), b).scale(&sign(x.sdeg()))).unwrap();
        prop_assert!(lhs.minus(&rhs).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_coderivation_commutator(seed in 0u64..10_000) {
        let (a, x, y, _) = triple(seed);
        let bar = BarCoalgebra::build(a.space(), ComplexWindow::new(4, 4).unwrap()).unwrap();
        let (kx, ky) = (x.sdeg(), y.sdeg());
        let xy = x.bracket(&y, a.basis());
        for n in -4..=8 {
            let blocks = (
                bar.coderivation_block(&y, n),
                bar.coderivation_block(&x, n + ky),
                bar.coderivation_block(&x, n),
                bar.coderivation_block(&y, n + kx),
                bar.coderivation_block(&xy, n),
            );
            if let (Some(dy), Some(dx_after), Some(dx), Some(dy_after), Some(dxy)) = blocks {
                let comm = dx_after.mul(&dy).sub(&dy_after.mul(&dx).scale(&sign(kx * ky)));
                prop_assert!(comm.sub(&dxy).is_zero(), "degree {}", n);
            }
        }
    }

    #[test]
    fn cup_structure_is_ainfinity(seed in 0u64..10_000, n in 1usize..=3) {
        let a = fixtures::random_algebra(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs: Vec<Cochain> = (0..n).map(|_| {
            let k: i64 = rng.gen_range(-1..=1);
            random_cochain(a.basis(), k, 0..=2, 0.3, &mut rng)
        }).collect();
        let refs: Vec<&Cochain> = fs.iter().collect();
        let cup = CupStructure::new(a.basis(), &a);
        prop_assert!(cup.stasheff_defect(&refs).unwrap().is_zero());
    }
}

#[test]
fn bracket_examples() {
    let a = fixtures::ainf_fixture();
    let m = a.m();
    assert_eq!(m.bracket(m, a.basis()), m.circle(m, a.basis()).scale(&q(2)));
    assert!(m.bracket(m, a.basis()).is_zero());
    assert!(m.bracket(&Cochain::zero(0), a.basis()).is_zero());
}

#[test]
fn associative_circle_expansion() {
    let a = fixtures::truncated_polynomial(3);
    let mm = a.m().circle(a.m(), a.basis());
    assert!(mm.is_zero());
}

#[test]
fn derivations_are_cocycles() {
    let a = fixtures::dual_numbers();
    assert!(deformation_differential(&fixtures::euler_derivation(), &a).is_zero());
    let m2 = fixtures::matrix_algebra();
    assert!(deformation_differential(&fixtures::inner_derivation_m2(), &m2).is_zero());
    assert!(deformation_differential(&Cochain::zero(0), &a).is_zero());
}

#[test]
fn hochschild_cohomology_values() {
    let w = ComplexWindow::new(6, 0).unwrap();
    let hh = |a: &AInfinityAlgebra, p| hochschild_cohomology_dim(a, p, w).unwrap();
    let eps = fixtures::dual_numbers();
    assert!(hh(&eps, 2) >= 1);
    assert_eq!(hh(&fixtures::ground_field(), 2), 0);
    assert_eq!(hh(&fixtures::matrix_algebra(), 1), 0);
    assert_eq!(hh(&fixtures::matrix_algebra(), 0), 1);
    assert_eq!(hh(&fixtures::truncated_polynomial(3), 2), 2);
    assert_eq!(hh(&fixtures::zero_algebra(), 0), 0);
}

/// On a degree-0 algebra, `m̃_2(f, g) = (−1)^{(1−q)p} f ∪ g` for `f` of arity
/// `p` and `g` of arity `q`, where `(f ∪ g)(a, b) = f(a) g(b)`.
#[test]
fn cup_matches_classical_cup() {
    let a = fixtures::dual_numbers();
    let basis = a.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in 0..=2usize {
        for qa in 0..=2usize {
            let f = random_cochain(basis, 1 - p as i64, [p], 0.7, &mut rng);
            let g = random_cochain(basis, 1 - qa as i64, [qa], 0.7, &mut rng);
            let cup = CupStructure::new(basis, &a).op(&[&f, &g]);
            let mut classical = Cochain::zero(cup.sdeg());
            for (ft, fo, fc) in f.triples() {
                for (gt, go, gc) in g.triples() {
                    let mut t = ft.clone();
                    t.extend_from_slice(&gt);
                    for (o, c) in a.mul(&[fo, go]) {
                        classical.add(&t, *o, &fc * &gc * c);
                    }
                }
            }
            let expected = classical.scale(&sign((1 - qa as i64) * p as i64));
            assert!(cup.minus(&expected).unwrap().is_zero(), "p={p} q={qa}");
        }
    }
}

fn cocycles(dc: &DeformationComplex, k: i64) -> Vec<Cochain> {
    let d = dc.delta_matrix(k).unwrap();
    dense::kernel(&d.to_dense(), d.cols())
        .into_iter()
        .map(|v| dc.cochain(k, &v).unwrap())
        .collect()
}

/// For cocycles `f, g` on algebras with `m_{≥3} = 0`,
/// `m̃_2(f, g) + (−1)^{|f||g|} m̃_2(g, f)` is a coboundary. In suspended
/// degrees the cup product is graded anticommutative up to homotopy.
#[test]
fn cup_commutes_in_cohomology() {
    let fixtures = [
        fixtures::dual_numbers(),
        fixtures::truncated_polynomial(3),
        fixtures::product_of_fields(),
        fixtures::graded_dual_numbers(),
        fixtures::dg_fixture(),
    ];
    for a in fixtures {
        let dc = DeformationComplex::new(&a, ComplexWindow::new(5, 4).unwrap()).unwrap();
        let cup = CupStructure::new(a.basis(), &a);
        let pieces: Vec<Vec<Cochain>> = [1, 0, -1].iter().map(|k| cocycles(&dc, *k)).collect();
        for fs in &pieces {
            for gs in &pieces {
                for f in fs.iter().take(3) {
                    for g in gs.iter().take(3) {
                        let c = cup
                            .op(&[f, g])
                            .plus(&cup.op(&[g, f]).scale(&sign(f.sdeg() * g.sdeg())))
                            .unwrap();
                        assert!(
                            dc.is_coboundary(&c).unwrap(),
                            "degrees {} {}",
                            f.sdeg(),
                            g.sdeg()
                        );
                    }
                }
            }
        }
    }
}

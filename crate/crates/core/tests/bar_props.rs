use ainf_core::bar::{coalgebra_morphism_block, gauge_transform, BarCoalgebra, ComplexWindow};
use ainf_core::cochain::random_cochain;
use ainf_core::fixtures;
use ainf_core::scalar::q;
use ainf_core::tensor::Chain;
use ainf_core::AInfinityAlgebra;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn window() -> ComplexWindow {
    ComplexWindow::new(4, 4).unwrap()
}

fn setup(seed: u64) -> (AInfinityAlgebra, BarCoalgebra, ChaCha8Rng) {
    let a = fixtures::random_algebra(seed);
    let bar = BarCoalgebra::build(a.space(), window()).unwrap();
    (a, bar, ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31)))
}

fn all_tensors(bar: &BarCoalgebra) -> Vec<Vec<u32>> {
    (-8..=8)
        .filter_map(|n| bar.piece(n))
        .flat_map(|p| p.tensors().to_vec())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coproduct_is_coassociative(seed in 0u64..10_000) {
        let (_, bar, _) = setup(seed);
        for t in all_tensors(&bar) {
            let delta = bar.coproduct(&Chain::single(t.clone(), q(1)));
            let mut left = Chain::new();
            let mut right = Chain::new();
            for (p, c) in delta.iter() {
                let (x, y) = ainf_core::bar::split_pair(p);
                for (px, cx) in bar.coproduct(&Chain::single(x.to_vec(), c.clone())).iter() {
                    let (x1, x2) = ainf_core::bar::split_pair(px);
                    left.add_term([x1, &[u32::MAX], x2, &[u32::MAX], y].concat(), cx.clone());
                }
                for (py, cy) in bar.coproduct(&Chain::single(y.to_vec(), c.clone())).iter() {
                    let (y1, y2) = ainf_core::bar::split_pair(py);
                    right.add_term([x, &[u32::MAX], y1, &[u32::MAX], y2].concat(), cy.clone());
                }
            }
            prop_assert_eq!(left.sorted(), right.sorted());
        }
    }

    #[test]
    fn coderivation_identity(seed in 0u64..10_000) {
        let (a, bar, mut rng) = setup(seed);
        let k: i64 = rng.gen_range(-1..=1);
        let f = random_cochain(a.basis(), k, 0..=3, 0.3, &mut rng);
        for t in all_tensors(&bar) {
            let mut bt = Chain::new();
            f.coderivation_apply(&t, &q(1), a.basis(), &mut bt);
            let lhs = bar.coproduct(&bt);
            let rhs = bar.coderivation_on_pairs(&f, &bar.coproduct(&Chain::single(t.clone(), q(1))));
            prop_assert_eq!(lhs.sorted(), rhs.sorted());
        }
    }

    #[test]
    fn square_is_coderivation_of_circle(seed in 0u64..10_000) {
        let (a, bar, mut rng) = setup(seed);
        let m = random_cochain(a.basis(), -1, 1..=3, 0.3, &mut rng);
        let mm = m.circle(&m, a.basis());
        for n in -4..=8 {
            if let (Some(first), Some(second), Some(sq)) =
                (bar.coderivation_block(&m, n), bar.coderivation_block(&m, n - 1), bar.coderivation_block(&mm, n))
            {
                prop_assert!(second.mul(&first).sub(&sq).is_zero());
            }
        }
    }

    #[test]
    fn codifferential_lowers_degree(seed in 0u64..10_000) {
        let (a, bar, _) = setup(seed);
        for t in all_tensors(&bar) {
            let mut out = Chain::new();
            a.m().coderivation_apply(&t, &q(1), a.basis(), &mut out);
            for (u, _) in out.iter() {
                prop_assert_eq!(a.basis().tensor_sdeg(u), a.basis().tensor_sdeg(&t) - 1);
            }
        }
    }

    #[test]
    fn corestriction_round_trip(seed in 0u64..10_000) {
        let (a, bar, mut rng) = setup(seed);
        let k: i64 = rng.gen_range(-1..=1);
        let f = random_cochain(a.basis(), k, 1..=3, 0.4, &mut rng);
        let d = bar.coderivation_from_cochain(&f).unwrap();
        let back = bar.cochain_from_coderivation(&d).unwrap();
        prop_assert!(back.minus(&f).unwrap().is_zero());
    }
}

#[test]
fn codifferential_squares_to_zero_on_fixtures() {
    for (name, a) in fixtures::named() {
        let bar = BarCoalgebra::build(a.space(), window()).unwrap();
        for n in -4..=8 {
            if let (Some(first), Some(second)) = (
                bar.coderivation_block(a.m(), n),
                bar.coderivation_block(a.m(), n - 1),
            ) {
                assert!(second.mul(&first).is_zero(), "{name} degree {n}");
            }
        }
    }
}

#[test]
fn non_coderivation_is_rejected() {
    let a = fixtures::dual_numbers();
    let bar = BarCoalgebra::build(a.space(), window()).unwrap();
    let mut d = bar.coderivation_from_cochain(a.m()).unwrap();
    let src = d
        .blocks()
        .keys()
        .copied()
        .find(|n| d.block(*n).cols() > 1)
        .unwrap();
    let blk = d.block(src);
    let bumped = blk.add(&ainf_core::exactlin::SparseMatrix::from_triplets(
        blk.rows(),
        blk.cols(),
        vec![(0, blk.cols() - 1, q(1))],
    ));
    d.set_block(src, bumped).unwrap();
    assert!(bar.cochain_from_coderivation(&d).is_err());
}

#[test]
fn gauge_intertwines_codifferentials() {
    let base = fixtures::dg_square_zero_extension();
    let f = fixtures::ainf_fixture_gauge();
    let moved = gauge_transform(&base, &f).unwrap();
    let bar = BarCoalgebra::build(base.space(), window()).unwrap();
    for n in -4..=8 {
        let blocks = (
            bar.coderivation_block(base.m(), n),
            coalgebra_morphism_block(&f, &bar, &bar, n - 1),
            coalgebra_morphism_block(&f, &bar, &bar, n),
            bar.coderivation_block(moved.m(), n),
        );
        if let (Some(d), Some(f_after), Some(f_before), Some(d_moved)) = blocks {
            assert!(
                f_after.mul(&d).sub(&d_moved.mul(&f_before)).is_zero(),
                "degree {n}"
            );
        }
    }
    assert!(moved.m().component(3).is_some());
}

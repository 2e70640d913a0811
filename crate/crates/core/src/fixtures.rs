//! Named example algebras, derivations and deformations, plus seeded random
//! A∞-algebras.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AInfinityAlgebra;
use crate::bar::gauge_transform;
use crate::cochain::{cochain_basis, Cochain};
use crate::exactlin::{dense, GradedVectorSpace};
use crate::scalar::{q, Q};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn space(per_degree: &[&[&str]]) -> GradedVectorSpace {
    GradedVectorSpace::new(per_degree.iter().map(|d| labels(d)).collect())
        .expect("fixture labels are distinct")
}

/// Unit-only products `1·a = a·1 = a` for a unit at index 0.
fn unit_products(dim: u32) -> Vec<(u32, u32, u32, Q)> {
    let mut p = vec![(0, 0, 0, q(1))];
    for a in 1..dim {
        p.push((0, a, a, q(1)));
        p.push((a, 0, a, q(1)));
    }
    p
}

/// The ground field `K`.
pub fn ground_field() -> AInfinityAlgebra {
    AInfinityAlgebra::from_associative(labels(&["1"]), &[(0, 0, 0, q(1))], Some(0))
        .expect("valid fixture")
}

/// `K[x]/(x^k)` with basis `1, x, …, x^{k−1}` in degree 0.
pub fn truncated_polynomial(k: u32) -> AInfinityAlgebra {
    let names: Vec<String> = (0..k)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect();
    let mut prod = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i + j < k {
                prod.push((i, j, i + j, q(1)));
            }
        }
    }
    AInfinityAlgebra::from_associative(names, &prod, Some(0)).expect("valid fixture")
}

/// Dual numbers `K[ε]/(ε²)`.
pub fn dual_numbers() -> AInfinityAlgebra {
    AInfinityAlgebra::from_associative(
        labels(&["1", "e"]),
        &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))],
        Some(0),
    )
    .expect("valid fixture")
}

/// `K × K` with basis `1, e` where `e² = e`.
pub fn product_of_fields() -> AInfinityAlgebra {
    let mut prod = unit_products(2);
    prod.push((1, 1, 1, q(1)));
    AInfinityAlgebra::from_associative(labels(&["1", "e"]), &prod, Some(0)).expect("valid fixture")
}

/// Degree-0 algebra spanned by the given integer 2×2 matrices, which must be
/// closed under multiplication; the first one must be the identity.
fn matrix_span(names: &[&str], mats: &[[[i64; 2]; 2]]) -> AInfinityAlgebra {
    let n = mats.len();
    let flat = |m: &[[i64; 2]; 2]| -> Vec<Q> { m.iter().flatten().map(|&x| q(x)).collect() };
    let cols: Vec<Vec<Q>> = mats.iter().map(flat).collect();
    let system: Vec<Vec<Q>> = (0..4)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect();
    let mut prod = Vec::new();
    for (i, a) in mats.iter().enumerate() {
        for (j, b) in mats.iter().enumerate() {
            let mut c = [[0i64; 2]; 2];
            for r in 0..2 {
                for s in 0..2 {
                    c[r][s] = (0..2).map(|k| a[r][k] * b[k][s]).sum();
                }
            }
            let coords = dense::solve(&system, n, &flat(&c)).expect("span closed under products");
            for (o, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    prod.push((i as u32, j as u32, o as u32, v));
                }
            }
        }
    }
    AInfinityAlgebra::from_associative(labels(names), &prod, Some(0)).expect("valid fixture")
}

/// `M_2(K)` in the basis `I, E11, E12, E21`.
pub fn matrix_algebra() -> AInfinityAlgebra {
    matrix_span(
        &["I", "E11", "E12", "E21"],
        &[
            [[1, 0], [0, 1]],
            [[1, 0], [0, 0]],
            [[0, 1], [0, 0]],
            [[0, 0], [1, 0]],
        ],
    )
}

/// Upper triangular 2×2 matrices in the basis `I, E11, E12`.
pub fn upper_triangular() -> AInfinityAlgebra {
    matrix_span(
        &["I", "E11", "E12"],
        &[[[1, 0], [0, 1]], [[1, 0], [0, 0]], [[0, 1], [0, 0]]],
    )
}

/// DG algebra `{1, x | y}` with `d y = x` and all products of `x, y` zero.
/// Its degree-0 part is `K[x]/(x²)` and its homology is `K` in degree 0.
pub fn dg_fixture() -> AInfinityAlgebra {
    AInfinityAlgebra::from_dg(
        space(&[&["1", "x"], &["y"]]),
        &[(2, 1, q(1))],
        &unit_products(3),
        Some(0),
    )
    .expect("valid fixture")
}

/// `K ⊕ K y` with `|y| = 1`, zero differential and `y² = 0`.
pub fn graded_dual_numbers() -> AInfinityAlgebra {
    AInfinityAlgebra::from_dg(space(&[&["1"], &["y"]]), &[], &unit_products(2), Some(0))
        .expect("valid fixture")
}

/// DG algebra `{1, u, x | y}` with `d y = x` and all products of `u, x, y` zero.
pub fn dg_square_zero_extension() -> AInfinityAlgebra {
    AInfinityAlgebra::from_dg(
        space(&[&["1", "u", "x"], &["y"]]),
        &[(3, 2, q(1))],
        &unit_products(4),
        Some(0),
    )
    .expect("valid fixture")
}

/// Gauge used to build the A∞ fixture: `f_1 = id`, `f_2(u,u) = y`, `f_2(u,x) = y`.
pub fn ainf_fixture_gauge() -> Cochain {
    let mut f = Cochain::zero(0);
    for e in 0..4 {
        f.add(&[e], e, q(1));
    }
    f.add(&[1, 1], 3, q(1));
    f.add(&[1, 2], 3, q(1));
    f
}

/// A∞-algebra with `m_3 ≠ 0`: the square-zero DG extension transported
/// along a non-strict isomorphism. Its `H_0` is `K[u]/(u²)`.
pub fn ainf_fixture() -> AInfinityAlgebra {
    gauge_transform(&dg_square_zero_extension(), &ainf_fixture_gauge())
        .expect("gauge transform of a valid algebra")
}

/// The algebra with no basis at all.
pub fn zero_algebra() -> AInfinityAlgebra {
    AInfinityAlgebra::new(GradedVectorSpace::zero(), Cochain::zero(-1), None)
        .expect("valid fixture")
}

/// The named fixtures used throughout the test suites.
pub fn named() -> Vec<(&'static str, AInfinityAlgebra)> {
    vec![
        ("K", ground_field()),
        ("K[e]/e^2", dual_numbers()),
        ("K[x]/x^3", truncated_polynomial(3)),
        ("KxK", product_of_fields()),
        ("M2", matrix_algebra()),
        ("DG", dg_fixture()),
        ("Ainf", ainf_fixture()),
    ]
}

/// Euler derivation `ε ↦ ε` on the dual numbers.
pub fn euler_derivation() -> Cochain {
    let mut d = Cochain::zero(0);
    d.add(&[1], 1, q(1));
    d
}

/// Inner derivation `[E12, ·]` on `M_2` in the basis `I, E11, E12, E21`.
pub fn inner_derivation_m2() -> Cochain {
    let a = matrix_algebra();
    let mut d = Cochain::zero(0);
    for x in 0..4u32 {
        for (o, v) in a.mul(&[2, x]) {
            d.add(&[x], *o, v.clone());
        }
        for (o, v) in a.mul(&[x, 2]) {
            d.add(&[x], *o, -v.clone());
        }
    }
    d
}

/// Grading-type derivation on the DG fixture: `x ↦ x`, `y ↦ y`.
pub fn euler_derivation_dg() -> Cochain {
    let mut d = Cochain::zero(0);
    d.add(&[1], 1, q(1));
    d.add(&[2], 2, q(1));
    d
}

/// First-order deformation of the dual numbers: `m^(1)(ε, ε) = 1`.
pub fn dual_numbers_deformation() -> Cochain {
    let mut m = Cochain::zero(-1);
    m.add(&[1, 1], 0, q(1));
    m
}

/// Unitriangular change of basis inside each degree, fixing the unit.
fn random_basis_change<R: Rng>(a: &AInfinityAlgebra, rng: &mut R) -> Vec<Vec<Vec<Q>>> {
    (0..=a.top_degree().max(0))
        .map(|d| {
            let n = a.basis().in_degree(d).len();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Q::one()
                            } else if i < j {
                                q(rng.gen_range(-1..=1))
                            } else {
                                Q::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Random gauge `f_1 = id` plus small `f_2, f_3` vanishing on the unit.
fn random_gauge<R: Rng>(a: &AInfinityAlgebra, rng: &mut R) -> Cochain {
    let mut f = Cochain::zero(0);
    for e in 0..a.dim() as u32 {
        f.add(&[e], e, Q::one());
    }
    for (t, o) in cochain_basis(a.basis(), 0, [2, 3]) {
        if a.unit().is_some_and(|u| t.contains(&u)) {
            continue;
        }
        if rng.gen_bool(0.5) {
            f.add(&t, o, q(rng.gen_range(-1..=1)));
        }
    }
    f
}

/// Seeded random unital A∞-algebra of total dimension at most 4: a small
/// DG or associative algebra, moved by a random basis change and a random
/// non-strict gauge. Always satisfies the Stasheff identities.
pub fn random_algebra(seed: u64) -> AInfinityAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<fn() -> AInfinityAlgebra> = vec![
        dual_numbers,
        || truncated_polynomial(3),
        product_of_fields,
        upper_triangular,
        dg_fixture,
        graded_dual_numbers,
        dg_square_zero_extension,
    ];
    let base = pool.choose(&mut rng).expect("nonempty pool")();
    let moved = base
        .transport(&random_basis_change(&base, &mut rng))
        .expect("unit-fixing basis change");
    gauge_transform(&moved, &random_gauge(&moved, &mut rng)).expect("gauge of a valid algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        for (name, a) in named() {
            assert!(a.check_unit().is_ok(), "{name}");
        }
        assert_eq!(matrix_algebra().dim(), 4);
        assert_eq!(dg_fixture().homology_dims(), vec![1, 0]);
    }

    #[test]
    fn ainf_fixture_has_m3() {
        let a = ainf_fixture();
        assert!(a.m().component(3).is_some());
        assert_eq!(a.homology_dims(), vec![2, 0]);
    }

    #[test]
    fn random_algebras_are_valid() {
        for seed in 0..20 {
            let a = random_algebra(seed);
            assert!(a.dim() <= 4);
        }
    }
}

//! Truncated bar coalgebra `T^c A[1]`, coderivations and coalgebra morphisms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::AInfinityAlgebra;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exactlin::{GradedLinearMap, GradedVectorSpace, SparseMatrix};
use crate::scalar::{sign, Q};
use crate::tensor::{operator_matrix, Chain, GradedBasis, Tensor, TensorIndex};

/// Truncation parameters shared by every complex.
///
/// `max_weight` bounds tensor length and `max_degree` bounds the internal
/// degree of the algebra. A Hochschild-type chain of total degree `n` has
/// length at most `n + 1`, so homology in degree `n` needs chains of length
/// `n + 2` and is exact for `n ≤ max_weight − 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexWindow {
    pub max_weight: usize,
    pub max_degree: i64,
}

impl ComplexWindow {
    pub fn new(max_weight: usize, max_degree: i64) -> Result<Self> {
        if max_weight < 2 {
            return Err(Error::Config(format!(
                "max weight must be at least 2, got {max_weight}"
            )));
        }
        if max_degree < 0 {
            return Err(Error::Config("max degree must be nonnegative".into()));
        }
        Ok(ComplexWindow {
            max_weight,
            max_degree,
        })
    }

    /// Highest homological degree reported.
    pub fn reliable_bound(&self) -> i64 {
        self.max_weight as i64 - 2
    }

    pub fn check_homological(&self, n: i64) -> Result<()> {
        if n > self.reliable_bound() {
            return Err(Error::WindowExceeded(format!(
                "degree {n} needs max weight {} but the window has {}",
                n + 2,
                self.max_weight
            )));
        }
        Ok(())
    }

    pub fn check_algebra(&self, a: &AInfinityAlgebra) -> Result<()> {
        if a.top_degree() > self.max_degree {
            return Err(Error::Config(format!(
                "algebra has degree {} above the window's max degree {}",
                a.top_degree(),
                self.max_degree
            )));
        }
        Ok(())
    }
}

impl Default for ComplexWindow {
    fn default() -> Self {
        ComplexWindow {
            max_weight: 8,
            max_degree: 4,
        }
    }
}

/// `(T^c A[1])_n` for `0 ≤ n ≤ W`, graded by total suspended degree. Every
/// tensor of suspended degree `n` has length at most `n`, so these pieces are
/// complete.
#[derive(Clone, Debug)]
pub struct BarCoalgebra {
    basis: GradedBasis,
    window: ComplexWindow,
    pieces: BTreeMap<i64, TensorIndex>,
}

/// Marker separating the two factors when an element of `T ⊗ T` is stored as a single tensor.
pub const SEP: u32 = u32::MAX;

pub fn pair(x: &[u32], y: &[u32]) -> Tensor {
    let mut t = Vec::with_capacity(x.len() + y.len() + 1);
    t.extend_from_slice(x);
    t.push(SEP);
    t.extend_from_slice(y);
    t
}

pub fn split_pair(t: &[u32]) -> (&[u32], &[u32]) {
    let i = t.iter().position(|&e| e == SEP).expect("pair tensor");
    (&t[..i], &t[i + 1..])
}

impl BarCoalgebra {
    pub fn build(space: &GradedVectorSpace, window: ComplexWindow) -> Result<Self> {
        if space.total_dim() > 0
            && (space.min_degree() < 0 || space.max_degree() > window.max_degree)
        {
            return Err(Error::Config(
                "space is not supported in degrees 0..=max_degree".into(),
            ));
        }
        let basis = GradedBasis::new(space);
        let mut pieces = BTreeMap::new();
        for n in 0..=window.max_weight as i64 {
            let tensors: Vec<Tensor> = (0..=n as usize)
                .flat_map(|len| basis.tensors(len, n))
                .collect();
            pieces.insert(n, TensorIndex::new(tensors));
        }
        Ok(BarCoalgebra {
            basis,
            window,
            pieces,
        })
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn window(&self) -> ComplexWindow {
        self.window
    }

    pub fn piece(&self, n: i64) -> Option<&TensorIndex> {
        self.pieces.get(&n)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.values().map(TensorIndex::len).collect()
    }

    /// Summands `(A_{i_1}, …, A_{i_r})` making up degree `n`.
    pub fn weight_decomposition(&self, n: i64) -> Vec<Vec<i64>> {
        let mut shapes: Vec<Vec<i64>> = self
            .piece(n)
            .map(|p| {
                p.tensors()
                    .iter()
                    .map(|t| t.iter().map(|&e| self.basis.degree(e)).collect())
                    .collect()
            })
            .unwrap_or_default();
        shapes.sort();
        shapes.dedup();
        shapes
    }

    /// The space `⊕_{n ≤ W} (T^c A[1])_n` with tensors as labels.
    pub fn as_space(&self) -> GradedVectorSpace {
        let labels = self
            .pieces
            .values()
            .map(|p| {
                p.tensors()
                    .iter()
                    .map(|t| self.basis.format_tensor(t))
                    .collect()
            })
            .collect();
        GradedVectorSpace::new(labels).expect("tensor labels are distinct")
    }

    /// Matrix of `b'_f : (T^c A[1])_n → (T^c A[1])_{n+k}`, or `None` when the
    /// target lies outside the window.
    pub fn coderivation_block(&self, f: &Cochain, n: i64) -> Option<SparseMatrix> {
        let src = self.piece(n)?;
        let tgt = self.piece(n + f.sdeg())?;
        Some(operator_matrix(src, tgt, |t| {
            let mut out = Chain::new();
            f.coderivation_apply(t, &Q::one(), &self.basis, &mut out);
            out
        }))
    }

    /// `b'_f` on the window, as a graded map of degree `k`. Source degrees
    /// whose image leaves the window are left out.
    pub fn coderivation_from_cochain(&self, f: &Cochain) -> Result<GradedLinearMap> {
        f.check_degrees(&self.basis)?;
        let space = self.as_space();
        let mut map = GradedLinearMap::zero(&space, &space, f.sdeg());
        for &n in self.pieces.keys() {
            if let Some(b) = self.coderivation_block(f, n) {
                map.set_block(n, b)?;
            }
        }
        Ok(map)
    }

    /// Corestriction to the cogenerators `A[1]`. Fails with an invariant
    /// error unless `c` is the coderivation of the recovered cochain.
    pub fn cochain_from_coderivation(&self, c: &GradedLinearMap) -> Result<Cochain> {
        let k = c.degree();
        let mut f = Cochain::zero(k);
        for (&n, blk) in c.blocks() {
            let src = self
                .piece(n)
                .ok_or_else(|| Error::Range(format!("degree {n} outside the bar window")))?;
            let tgt = self
                .piece(n + k)
                .ok_or_else(|| Error::Range(format!("degree {} outside the bar window", n + k)))?;
            for (j, t) in src.tensors().iter().enumerate() {
                for (r, v) in blk.column(j) {
                    let img = &tgt.tensors()[*r];
                    if img.len() == 1 {
                        f.add(t, img[0], v.clone());
                    }
                }
            }
        }
        let rebuilt = self.coderivation_from_cochain(&f)?;
        for n in self.pieces.keys() {
            let covered = self.piece(n + k).is_some();
            if covered && rebuilt.block(*n) != c.block(*n) {
                return Err(Error::Invariant(format!(
                    "map is not a coderivation on degree {n}"
                )));
            }
        }
        Ok(f)
    }

    /// Deconcatenation `Δ(a_1..a_n) = Σ_i (a_1..a_i) ⊗ (a_{i+1}..a_n)`; no
    /// signs arise because nothing is permuted.
    pub fn coproduct(&self, c: &Chain) -> Chain {
        c.map(|t, v, out| {
            for i in 0..=t.len() {
                out.add_term(pair(&t[..i], &t[i..]), v.clone());
            }
        })
    }

    /// `(f ⊗ 1 + 1 ⊗ f)` on stored pairs, with the Koszul sign
    /// `(−1)^{k·|x|}` when `f` passes the left factor `x`.
    pub fn coderivation_on_pairs(&self, f: &Cochain, c: &Chain) -> Chain {
        c.map(|t, v, out| {
            let (x, y) = split_pair(t);
            let mut left = Chain::new();
            f.coderivation_apply(x, v, &self.basis, &mut left);
            for (lx, lv) in left.iter() {
                out.add_term(pair(lx, y), lv.clone());
            }
            let s = sign(f.sdeg() * self.basis.tensor_sdeg(x));
            let mut right = Chain::new();
            f.coderivation_apply(y, &(v * &s), &self.basis, &mut right);
            for (ry, rv) in right.iter() {
                out.add_term(pair(x, ry), rv.clone());
            }
        })
    }
}

/// Applies the coalgebra morphism `f̂` determined by a suspended-degree-0
/// cochain: `f̂(a_1..a_n) = Σ f_{n_1}(…) ⊗ ⋯ ⊗ f_{n_r}(…)` over all splittings
/// into consecutive nonempty blocks. Degree-0 maps commute past everything
/// without sign.
pub fn morphism_apply(f: &Cochain, t: &[u32], c: &Q, out: &mut Chain) {
    fn rec(f: &Cochain, rest: &[u32], acc: &mut Vec<u32>, c: &Q, out: &mut Chain) {
        if rest.is_empty() {
            out.add_term(acc.clone(), c.clone());
            return;
        }
        for (n, comp) in f.components() {
            if n == 0 || n > rest.len() {
                continue;
            }
            for (o, v) in comp.eval(&rest[..n]) {
                acc.push(*o);
                rec(f, &rest[n..], acc, &(c * v), out);
                acc.pop();
            }
        }
    }
    assert_eq!(
        f.sdeg(),
        0,
        "coalgebra morphisms come from suspended-degree-0 cochains"
    );
    let mut acc = Vec::new();
    rec(f, t, &mut acc, c, out);
}

/// Matrix of `f̂` from degree `n` of `src` to degree `n` of `tgt`.
pub fn coalgebra_morphism_block(
    f: &Cochain,
    src: &BarCoalgebra,
    tgt: &BarCoalgebra,
    n: i64,
) -> Option<SparseMatrix> {
    Some(operator_matrix(src.piece(n)?, tgt.piece(n)?, |t| {
        let mut out = Chain::new();
        morphism_apply(f, t, &Q::one(), &mut out);
        out
    }))
}

/// Pushes an A∞-structure forward along an A∞-isomorphism with `f_1 = id`:
/// the unique `m'` with `f̂ ∘ b'_m = b'_{m'} ∘ f̂`. The higher components of
/// `f` should vanish on the unit for the result to stay strictly unital.
pub fn gauge_transform(a: &AInfinityAlgebra, f: &Cochain) -> Result<AInfinityAlgebra> {
    let basis = a.basis();
    if f.sdeg() != 0 {
        return Err(Error::Degree("gauge must have suspended degree 0".into()));
    }
    let mut id_check = f.restrict(|n| n == 1);
    for e in 0..a.dim() as u32 {
        id_check.add(&[e], e, -Q::one());
    }
    if !id_check.is_zero() || f.component(0).is_some() {
        return Err(Error::Precondition(
            "gauge must have f_1 = id and no weight-0 part".into(),
        ));
    }
    f.check_degrees(basis)?;
    let top = a.top_degree();
    let mut m2 = Cochain::zero(-1);
    for n in 1..=(top + 2).max(1) as usize {
        for d_in in 0..=(top * n as i64) {
            if d_in + n as i64 - 2 > top {
                continue;
            }
            for t in basis.tensors_of_degree(n, d_in) {
                let mut bt = Chain::new();
                a.m().coderivation_apply(&t, &Q::one(), basis, &mut bt);
                let mut val: BTreeMap<u32, Q> = BTreeMap::new();
                for (s, v) in bt.iter() {
                    for (o, w) in f.eval(s) {
                        *val.entry(*o).or_insert_with(Q::zero) += v * w;
                    }
                }
                let mut ft = Chain::new();
                morphism_apply(f, &t, &Q::one(), &mut ft);
                for (s, v) in ft.iter() {
                    if s.len() >= n {
                        continue;
                    }
                    for (o, w) in m2.eval(s) {
                        *val.entry(*o).or_insert_with(Q::zero) -= v * w;
                    }
                }
                for (o, v) in val {
                    m2.add(&t, o, v);
                }
            }
        }
    }
    AInfinityAlgebra::new(a.space().clone(), m2, a.unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn bar_piece_dims() {
        let w = ComplexWindow::new(3, 4).unwrap();
        let bar = BarCoalgebra::build(&GradedVectorSpace::from_dims(&[1]), w).unwrap();
        assert_eq!(bar.dims(), vec![1, 1, 1, 1]);
        let bar = BarCoalgebra::build(&GradedVectorSpace::from_dims(&[1, 1]), w).unwrap();
        assert_eq!(bar.dims()[2], 2);
        assert!(ComplexWindow::new(1, 0).is_err());
    }

    #[test]
    fn deconcatenation() {
        let w = ComplexWindow::new(3, 0).unwrap();
        let bar = BarCoalgebra::build(&GradedVectorSpace::from_dims(&[2]), w).unwrap();
        let d = bar.coproduct(&Chain::single(vec![0, 1], q(1)));
        assert_eq!(d.len(), 3);
        assert_eq!(d.get(&pair(&[], &[0, 1])), q(1));
        assert_eq!(d.get(&pair(&[0], &[1])), q(1));
        assert_eq!(d.get(&pair(&[0, 1], &[])), q(1));
    }

    #[test]
    fn differential_only_bar_sign() {
        // b'(a1, a2) = (m1 a1, a2) + (−1)^{|a1|+1} (a1, m1 a2) with |a1| = 1.
        let space = GradedVectorSpace::from_dims(&[1, 1]);
        let basis = GradedBasis::new(&space);
        let mut m = Cochain::zero(-1);
        m.add(&[1], 0, q(1));
        let mut out = Chain::new();
        m.coderivation_apply(&[1, 1], &q(1), &basis, &mut out);
        assert_eq!(out.get(&[0, 1]), q(1));
        assert_eq!(out.get(&[1, 0]), q(1));
    }
}

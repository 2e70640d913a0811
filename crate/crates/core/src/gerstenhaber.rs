//! Gerstenhaber bracket, the deformation complex `(C•(A,A), δ)` with
//! `δx = [m, x]`, Hochschild cohomology, and the A∞-structure on
//! `Hom(T^c A[1], B)` induced by the deconcatenation coproduct.
//!
//! `H^p(A,A)` is the δ-cohomology at suspended degree `1 − p`. Cochains may
//! have a weight-0 component (a constant in `A`), which is what puts the
//! unit into `H^0` and binary products into `H^2`.

use num_traits::{One, Zero};

use crate::algebra::AInfinityAlgebra;
use crate::bar::ComplexWindow;
use crate::cochain::{cochain_basis, max_arity, Cochain};
use crate::error::{Error, Result};
use crate::exactlin::{ChainComplex, SparseMatrix};
use crate::scalar::{sign, Q};
use crate::tensor::{GradedBasis, Tensor};

pub fn circle(f: &Cochain, g: &Cochain, basis: &GradedBasis) -> Cochain {
    f.circle(g, basis)
}

pub fn bracket(x: &Cochain, y: &Cochain, basis: &GradedBasis) -> Cochain {
    x.bracket(y, basis)
}

/// `δx = [m, x]`.
pub fn deformation_differential(x: &Cochain, a: &AInfinityAlgebra) -> Cochain {
    a.m().bracket(x, a.basis())
}

/// Suspended degree hosting `H^p`.
pub fn suspended_degree_of(p: i64) -> i64 {
    1 - p
}

/// Finite-dimensional pieces of the deformation complex of one algebra.
pub struct DeformationComplex<'a> {
    alg: &'a AInfinityAlgebra,
    window: ComplexWindow,
}

impl<'a> DeformationComplex<'a> {
    pub fn new(alg: &'a AInfinityAlgebra, window: ComplexWindow) -> Result<Self> {
        window.check_algebra(alg)?;
        Ok(DeformationComplex { alg, window })
    }

    pub fn algebra(&self) -> &AInfinityAlgebra {
        self.alg
    }

    fn arities(&self, k: i64) -> Result<std::ops::RangeInclusive<usize>> {
        let top = self.alg.top_degree().max(0);
        let hi = max_arity(top, k);
        if hi > self.window.max_weight as i64 {
            return Err(Error::WindowExceeded(format!(
                "cochains of suspended degree {k} reach arity {hi} beyond max weight {}",
                self.window.max_weight
            )));
        }
        Ok(0..=hi.max(0) as usize)
    }

    /// Basis of `C^k`: all `(input, output)` pairs of suspended degree `k`.
    pub fn basis_at(&self, k: i64) -> Result<Vec<(Tensor, u32)>> {
        Ok(cochain_basis(self.alg.basis(), k, self.arities(k)?))
    }

    pub fn coords(&self, k: i64, x: &Cochain) -> Result<Vec<Q>> {
        let basis = self.basis_at(k)?;
        let mut v = vec![Q::zero(); basis.len()];
        for (t, o, c) in x.triples() {
            let i = basis
                .binary_search_by(|(bt, bo)| (bt.len(), bt, *bo).cmp(&(t.len(), &t, o)))
                .map_err(|_| Error::Range(format!("cochain entry {t:?} -> {o} outside C^{k}")))?;
            v[i] = c;
        }
        Ok(v)
    }

    pub fn cochain(&self, k: i64, coords: &[Q]) -> Result<Cochain> {
        let mut c = Cochain::zero(k);
        for ((t, o), v) in self.basis_at(k)?.iter().zip(coords) {
            c.add(t, *o, v.clone());
        }
        Ok(c)
    }

    /// `δ : C^k → C^{k−1}` as a matrix.
    pub fn delta_matrix(&self, k: i64) -> Result<SparseMatrix> {
        use rayon::prelude::*;
        let src = self.basis_at(k)?;
        let tgt = self.basis_at(k - 1)?;
        let cols = src
            .par_iter()
            .map(|(t, o)| {
                let mut e = Cochain::zero(k);
                e.add(t, *o, Q::one());
                let d = deformation_differential(&e, self.alg);
                let mut col = Vec::new();
                for (dt, dout, c) in d.triples() {
                    let i = tgt
                        .binary_search_by(|(bt, bo)| {
                            (bt.len(), bt, *bo).cmp(&(dt.len(), &dt, dout))
                        })
                        .map_err(|_| Error::Invariant("δ left the cochain window".into()))?;
                    col.push((i, c));
                }
                col.sort_by_key(|p| p.0);
                Ok(col)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(tgt.len(), cols))
    }

    /// `dim H^p(A, A)`.
    pub fn cohomology_dim(&self, p: i64) -> Result<usize> {
        let k = suspended_degree_of(p);
        // Cohomological complex C^{k+1} → C^k → C^{k−1}, stored homologically.
        let mut cx = ChainComplex::new();
        cx.insert(k, self.delta_matrix(k)?)?;
        cx.insert(k + 1, self.delta_matrix(k + 1)?)?;
        cx.homology_dim(k)
    }

    /// Whether `x` is a δ-coboundary: `x ∈ δ(C^{k+1})`.
    pub fn is_coboundary(&self, x: &Cochain) -> Result<bool> {
        let k = x.sdeg();
        let d = self.delta_matrix(k + 1)?;
        let v = self.coords(k, x)?;
        let col: Vec<(usize, Q)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let stacked = d.hstack(&SparseMatrix::from_columns(d.rows(), vec![col]));
        Ok(stacked.rank() == d.rank())
    }
}

pub fn hochschild_cohomology_dim(
    a: &AInfinityAlgebra,
    p: i64,
    window: ComplexWindow,
) -> Result<usize> {
    DeformationComplex::new(a, window)?.cohomology_dim(p)
}

/// A∞-operations on `Hom(T^c A[1], B)` (suspended):
/// `m̃_n(f_1, …, f_n) = m_n ∘ (f_1 ⊗ ⋯ ⊗ f_n) ∘ Δ^{(n)}`, where `Δ^{(n)}`
/// splits a tensor into `n` consecutive, possibly empty, pieces and the
/// tensor product of maps carries `(−1)^{Σ_j |f_j| Σ_{i<j} |c_i|}`.
pub struct CupStructure<'a> {
    source: &'a GradedBasis,
    target: &'a AInfinityAlgebra,
}

impl<'a> CupStructure<'a> {
    pub fn new(source: &'a GradedBasis, target: &'a AInfinityAlgebra) -> Self {
        CupStructure { source, target }
    }

    /// `m̃_n(f_1, …, f_n)`, exact on finitely supported maps.
    pub fn op(&self, fs: &[&Cochain]) -> Cochain {
        let n = fs.len();
        let sdeg = fs.iter().map(|f| f.sdeg()).sum::<i64>() - 1;
        let mut out = Cochain::zero(sdeg);
        let Some(mn) = self.target.m().component(n) else {
            return out;
        };
        let triples: Vec<Vec<(Tensor, u32, Q)>> = fs.iter().map(|f| f.triples()).collect();
        for (inputs, outs) in mn.entries() {
            let mut partial: Vec<(Tensor, Q, i64)> = vec![(Vec::new(), Q::one(), 0)];
            for (j, b) in inputs.iter().enumerate() {
                let mut next = Vec::new();
                for (t, c, prefix) in &partial {
                    for (ft, fo, fc) in &triples[j] {
                        if fo != b {
                            continue;
                        }
                        let s = sign(fs[j].sdeg() * prefix);
                        let mut u = t.clone();
                        u.extend_from_slice(ft);
                        next.push((u, c * fc * s, prefix + self.source.tensor_sdeg(ft)));
                    }
                }
                partial = next;
            }
            for (t, c, _) in partial {
                for (o, v) in outs {
                    out.add(&t, *o, &c * v);
                }
            }
        }
        out
    }

    /// `Σ ± m̃_i(f_1, …, m̃_j(f_p, …), …, f_n)` over all insertions; zero for an
    /// A∞-structure.
    pub fn stasheff_defect(&self, fs: &[&Cochain]) -> Result<Cochain> {
        let n = fs.len();
        let mut total = Cochain::zero(fs.iter().map(|f| f.sdeg()).sum::<i64>() - 2);
        for j in 1..=n {
            for p in 0..=n - j {
                let inner = self.op(&fs[p..p + j]);
                let prefix: i64 = fs[..p].iter().map(|f| f.sdeg()).sum();
                let mut args: Vec<&Cochain> = fs[..p].to_vec();
                args.push(&inner);
                args.extend_from_slice(&fs[p + j..]);
                total = total.plus(&self.op(&args).scale(&sign(prefix)))?;
            }
        }
        Ok(total)
    }
}

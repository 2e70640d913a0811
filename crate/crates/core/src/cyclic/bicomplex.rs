//! Matrices of the cyclic bicomplex `CC⁺`, the Hochschild column, the
//! λ-complex and the normalized `(b, B)` bicomplex, degree by degree.
//!
//! Column `p` of `CC⁺` is a copy of the Hochschild chains carrying `b` for
//! even `p` and `b'` for odd `p`. Horizontal maps are `1 − λ` (odd to even)
//! and `N` (even to odd). On column `p` the total differential is
//! `(−1)^p · vertical + horizontal`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use super::operators::{b_prime_with, b_with, CyclicOperators};
use crate::algebra::AInfinityAlgebra;
use crate::bar::ComplexWindow;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exactlin::SparseMatrix;
use crate::scalar::{sign, Q};
use crate::tensor::{operator_matrix, Chain, TensorIndex};

#[derive(Clone, Copy, Debug, Hash, PartialEq, Eq)]
enum Kind {
    B,
    BPrime,
    OneMinusLambda,
    Norm,
    Connes,
    Contraction,
    NormalizedB,
    NormalizedConnes,
    Tot,
    TotBB,
    S,
}

/// Lazily built, cached matrices of the cyclic complexes of one algebra.
pub struct CyclicComplexes {
    alg: AInfinityAlgebra,
    window: ComplexWindow,
    pieces: Vec<OnceLock<TensorIndex>>,
    normalized: Vec<OnceLock<TensorIndex>>,
    cache: Mutex<HashMap<(Kind, i64), Arc<SparseMatrix>>>,
    ranks: Mutex<HashMap<(Kind, i64), usize>>,
}

fn empty(rows: usize, cols: usize) -> Arc<SparseMatrix> {
    Arc::new(SparseMatrix::zeros(rows, cols))
}

/// Places signed blocks at offsets inside a `rows × cols` matrix.
pub(crate) fn assemble(
    rows: usize,
    cols: usize,
    blocks: &[(usize, usize, &SparseMatrix, Q)],
) -> SparseMatrix {
    let mut trip = Vec::new();
    for (r0, c0, m, s) in blocks {
        trip.extend(m.triplets().map(|(r, c, v)| (r + r0, c + c0, v * s)));
    }
    SparseMatrix::from_triplets(rows, cols, trip)
}

impl CyclicComplexes {
    pub fn new(alg: &AInfinityAlgebra, window: ComplexWindow) -> Result<Self> {
        window.check_algebra(alg)?;
        let w = window.max_weight;
        Ok(CyclicComplexes {
            alg: alg.clone(),
            window,
            pieces: (0..w).map(|_| OnceLock::new()).collect(),
            normalized: (0..w).map(|_| OnceLock::new()).collect(),
            cache: Mutex::new(HashMap::new()),
            ranks: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &AInfinityAlgebra {
        &self.alg
    }

    pub fn window(&self) -> ComplexWindow {
        self.window
    }

    pub fn ops(&self) -> CyclicOperators<'_> {
        CyclicOperators::new(&self.alg)
    }

    /// Hochschild chains of degree `n`: all `(a_0..a_k)` with `k + Σ|a_i| = n`.
    pub fn piece(&self, n: i64) -> Result<&TensorIndex> {
        self.piece_in(n, false)
    }

    /// Normalized chains of degree `n`: no unit in positions `1..`.
    pub fn normalized_piece(&self, n: i64) -> Result<&TensorIndex> {
        self.piece_in(n, true)
    }

    fn piece_in(&self, n: i64, normalized: bool) -> Result<&TensorIndex> {
        static EMPTY: OnceLock<TensorIndex> = OnceLock::new();
        if n < 0 {
            return Ok(EMPTY.get_or_init(TensorIndex::default));
        }
        if n as usize >= self.window.max_weight {
            return Err(Error::WindowExceeded(format!(
                "chains of degree {n} need tensors of length {} beyond max weight {}",
                n + 1,
                self.window.max_weight
            )));
        }
        let slot = if normalized {
            &self.normalized[n as usize]
        } else {
            &self.pieces[n as usize]
        };
        Ok(slot.get_or_init(|| {
            let basis = self.alg.basis();
            let unit = self.alg.unit();
            let tensors = (1..=(n + 1) as usize)
                .flat_map(|len| basis.tensors(len, n + 1))
                .filter(|t| !normalized || unit.is_none_or(|u| !t[1..].contains(&u)))
                .collect();
            TensorIndex::new(tensors)
        }))
    }

    fn cached(
        &self,
        kind: Kind,
        n: i64,
        build: impl FnOnce() -> Result<SparseMatrix>,
    ) -> Result<Arc<SparseMatrix>> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(&(kind, n)) {
            return Ok(m.clone());
        }
        let m = Arc::new(build()?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert((kind, n), m.clone());
        Ok(m)
    }

    fn cached_rank(&self, kind: Kind, n: i64, m: &SparseMatrix) -> usize {
        if let Some(r) = self.ranks.lock().expect("rank lock").get(&(kind, n)) {
            return *r;
        }
        let r = m.rank();
        self.ranks.lock().expect("rank lock").insert((kind, n), r);
        r
    }

    pub(crate) fn op_matrix(
        &self,
        src: i64,
        tgt: i64,
        normalized: bool,
        op: impl Fn(&[u32]) -> Chain + Sync,
    ) -> Result<SparseMatrix> {
        let s = self.piece_in(src, normalized)?;
        let t = self.piece_in(tgt, normalized)?;
        Ok(operator_matrix(s, t, op))
    }

    /// `b : C_n → C_{n−1}`.
    pub fn b(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.cached(Kind::B, n, || {
            self.op_matrix(n, n - 1, false, |t| self.ops().b(t))
        })
    }

    /// `b' : C_n → C_{n−1}`.
    pub fn b_prime(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.cached(Kind::BPrime, n, || {
            self.op_matrix(n, n - 1, false, |t| self.ops().b_prime(t))
        })
    }

    pub fn one_minus_lambda(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.cached(Kind::OneMinusLambda, n, || {
            self.op_matrix(n, n, false, |t| self.ops().one_minus_lambda(t))
        })
    }

    pub fn norm(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.cached(Kind::Norm, n, || {
            self.op_matrix(n, n, false, |t| self.ops().norm(t))
        })
    }

    /// `B : C_n → C_{n+1}` (unnormalized).
    pub fn connes_b(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.ops().s(&[])?;
        self.cached(Kind::Connes, n, || {
            self.op_matrix(n, n + 1, false, |t| {
                self.ops().connes_b(t).expect("unit checked")
            })
        })
    }

    /// `s : C_n → C_{n+1}`.
    pub fn contraction(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.ops().s(&[])?;
        self.cached(Kind::Contraction, n, || {
            self.op_matrix(n, n + 1, false, |t| self.ops().s(t).expect("unit checked"))
        })
    }

    /// Normalized `b`.
    pub fn normalized_b(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.cached(Kind::NormalizedB, n, || {
            self.op_matrix(n, n - 1, true, |t| self.ops().normalize(self.ops().b(t)))
        })
    }

    /// Normalized `B = sN`.
    pub fn normalized_connes_b(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.ops().s(&[])?;
        self.cached(Kind::NormalizedConnes, n, || {
            self.op_matrix(n, n + 1, true, |t| {
                self.ops().connes_b_normalized(t).expect("unit checked")
            })
        })
    }

    /// Sizes of the columns of `Tot_n CC⁺`: column `p` holds chains of degree `n − p`.
    pub fn tot_layout(&self, n: i64) -> Result<Vec<usize>> {
        (0..=n.max(-1))
            .map(|p| self.piece(n - p).map(TensorIndex::len))
            .collect()
    }

    fn offsets(sizes: &[usize]) -> Vec<usize> {
        let mut off = vec![0; sizes.len() + 1];
        for i in 0..sizes.len() {
            off[i + 1] = off[i] + sizes[i];
        }
        off
    }

    pub fn tot_dim(&self, n: i64) -> Result<usize> {
        Ok(self.tot_layout(n)?.iter().sum())
    }

    /// Total differential `Tot_n CC⁺ → Tot_{n−1} CC⁺`.
    pub fn tot(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        if n <= 0 {
            return Ok(empty(self.tot_dim(n - 1).unwrap_or(0), self.tot_dim(n)?));
        }
        self.cached(Kind::Tot, n, || {
            let src = self.tot_layout(n)?;
            let tgt = self.tot_layout(n - 1)?;
            let (so, to) = (Self::offsets(&src), Self::offsets(&tgt));
            let mut mats: Vec<(usize, usize, Arc<SparseMatrix>, Q)> = Vec::new();
            for p in 0..=n {
                let q = n - p;
                if q >= 1 {
                    let v = if p % 2 == 0 {
                        self.b(q)?
                    } else {
                        self.b_prime(q)?
                    };
                    mats.push((to[p as usize], so[p as usize], v, sign(p)));
                }
                if p >= 1 {
                    let h = if p % 2 == 1 {
                        self.one_minus_lambda(q)?
                    } else {
                        self.norm(q)?
                    };
                    mats.push((to[p as usize - 1], so[p as usize], h, Q::one()));
                }
            }
            let blocks: Vec<(usize, usize, &SparseMatrix, Q)> = mats
                .iter()
                .map(|(r, c, m, s)| (*r, *c, m.as_ref(), s.clone()))
                .collect();
            Ok(assemble(to[tgt.len()], so[src.len()], &blocks))
        })
    }

    pub fn tot_rank(&self, n: i64) -> Result<usize> {
        let m = self.tot(n)?;
        Ok(self.cached_rank(Kind::Tot, n, &m))
    }

    pub fn b_rank(&self, n: i64) -> Result<usize> {
        if n <= 0 {
            return Ok(0);
        }
        let m = self.b(n)?;
        Ok(self.cached_rank(Kind::B, n, &m))
    }

    /// `S : Tot_n → Tot_{n−2}`, dropping columns 0 and 1.
    pub fn s_map(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        self.cached(Kind::S, n, || {
            let src = self.tot_layout(n)?;
            let tgt = if n >= 2 {
                self.tot_layout(n - 2)?
            } else {
                Vec::new()
            };
            let so = Self::offsets(&src);
            let mut trip = Vec::new();
            if n >= 2 {
                let start = so[2];
                for i in start..so[src.len()] {
                    trip.push((i - start, i, Q::one()));
                }
            }
            Ok(SparseMatrix::from_triplets(
                tgt.iter().sum(),
                so[src.len()],
                trip,
            ))
        })
    }

    /// Inclusion of the Hochschild column `C_n → Tot_n`.
    pub fn inclusion(&self, n: i64) -> Result<SparseMatrix> {
        let d = self.piece(n)?.len();
        let trip = (0..d).map(|i| (i, i, Q::one()));
        Ok(SparseMatrix::from_triplets(self.tot_dim(n)?, d, trip))
    }

    /// Sizes of the columns of the normalized `(b, B)` total complex.
    pub fn bb_layout(&self, n: i64) -> Result<Vec<usize>> {
        (0..=n.max(-1) / 2)
            .map(|p| self.normalized_piece(n - 2 * p).map(TensorIndex::len))
            .collect()
    }

    pub fn bb_dim(&self, n: i64) -> Result<usize> {
        Ok(self.bb_layout(n)?.iter().sum())
    }

    /// `b + B` on the normalized `(b, B)` total complex in degree `n`.
    pub fn bb_tot(&self, n: i64) -> Result<Arc<SparseMatrix>> {
        if n <= 0 {
            return Ok(empty(self.bb_dim(n - 1).unwrap_or(0), self.bb_dim(n)?));
        }
        self.cached(Kind::TotBB, n, || {
            let src = self.bb_layout(n)?;
            let tgt = self.bb_layout(n - 1)?;
            let (so, to) = (Self::offsets(&src), Self::offsets(&tgt));
            let mut mats = Vec::new();
            for p in 0..src.len() {
                let q = n - 2 * p as i64;
                if q >= 1 && p < tgt.len() {
                    mats.push((to[p], so[p], self.normalized_b(q)?));
                }
                if p >= 1 {
                    mats.push((to[p - 1], so[p], self.normalized_connes_b(q)?));
                }
            }
            let blocks: Vec<(usize, usize, &SparseMatrix, Q)> = mats
                .iter()
                .map(|(r, c, m)| (*r, *c, m.as_ref(), Q::one()))
                .collect();
            Ok(assemble(to[tgt.len()], so[src.len()], &blocks))
        })
    }

    pub fn bb_rank(&self, n: i64) -> Result<usize> {
        let m = self.bb_tot(n)?;
        Ok(self.cached_rank(Kind::TotBB, n, &m))
    }

    /// Column-wise chain map `Tot_n → Tot_{n+k}` given per column by
    /// `op(p, q)`, a matrix `C_q → C_{q+k}` (of another algebra's chains
    /// when `target` is given).
    pub fn tot_columnwise(
        &self,
        target: &CyclicComplexes,
        n: i64,
        k: i64,
        op: impl Fn(usize, i64) -> Result<SparseMatrix>,
    ) -> Result<SparseMatrix> {
        let src = self.tot_layout(n)?;
        let tgt = target.tot_layout(n + k)?;
        let (so, to) = (Self::offsets(&src), Self::offsets(&tgt));
        let mut owned = Vec::new();
        for p in 0..src.len().min(tgt.len()) {
            owned.push((to[p], so[p], op(p, n - p as i64)?));
        }
        let blocks: Vec<(usize, usize, &SparseMatrix, Q)> = owned
            .iter()
            .map(|(r, c, m)| (*r, *c, m, Q::one()))
            .collect();
        Ok(assemble(to[tgt.len()], so[src.len()], &blocks))
    }

    /// Matrix of `b_f : C_q → C_{q+k}` for a cochain `f` of suspended degree `k`.
    pub fn b_of(&self, f: &Cochain, q: i64) -> Result<SparseMatrix> {
        let basis = self.alg.basis();
        self.op_matrix(q, q + f.sdeg(), false, |t| {
            let mut out = Chain::new();
            b_with(f, basis, t, &Q::one(), &mut out);
            out
        })
    }

    /// Matrix of `b'_f : C_q → C_{q+k}`.
    pub fn b_prime_of(&self, f: &Cochain, q: i64) -> Result<SparseMatrix> {
        let basis = self.alg.basis();
        self.op_matrix(q, q + f.sdeg(), false, |t| {
            let mut out = Chain::new();
            b_prime_with(f, basis, t, &Q::one(), &mut out);
            out
        })
    }

    /// Lie derivative `L_D` on `Tot_n CC⁺`: `(−1)^{p|D|} b_D` on even columns and
    /// `(−1)^{p|D|} b'_D` on odd columns.
    pub fn lie_derivative(&self, d: &Cochain, n: i64) -> Result<SparseMatrix> {
        self.tot_columnwise(self, n, d.sdeg(), |p, q| {
            let m = if p % 2 == 0 {
                self.b_of(d, q)?
            } else {
                self.b_prime_of(d, q)?
            };
            Ok(m.scale(&sign(p as i64 * d.sdeg())))
        })
    }
}

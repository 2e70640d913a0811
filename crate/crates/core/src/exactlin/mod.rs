//! Exact graded linear algebra: spaces, homogeneous maps, Koszul-signed
//! tensor products, and homology of chain complexes.

pub mod complex;
pub mod dense;
pub mod sparse;

use std::collections::{BTreeMap, HashSet};

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{sign, Q};

pub use complex::ChainComplex;
pub use sparse::SparseMatrix;

/// Finite-dimensional graded space with a named basis in each degree.
///
/// Degrees run over `base..base + dims.len()`. Ordinary algebras use
/// `base = 0`; shifts and Hom spaces may move it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVectorSpace {
    base: i64,
    labels: Vec<Vec<String>>,
}

impl GradedVectorSpace {
    /// Space supported in degrees `0..labels.len()`.
    pub fn new(labels: Vec<Vec<String>>) -> Result<Self> {
        Self::with_base(0, labels)
    }

    pub fn with_base(base: i64, labels: Vec<Vec<String>>) -> Result<Self> {
        for (i, row) in labels.iter().enumerate() {
            let mut seen = HashSet::new();
            for l in row {
                if !seen.insert(l) {
                    return Err(Error::Structural(format!(
                        "duplicate basis label {l:?} in degree {}",
                        base + i as i64
                    )));
                }
            }
        }
        Ok(GradedVectorSpace { base, labels }.trimmed())
    }

    /// Space with generated labels `e{degree}_{index}`.
    pub fn from_dims(dims: &[usize]) -> Self {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(d, &n)| (0..n).map(|i| format!("e{d}_{i}")).collect())
            .collect();
        GradedVectorSpace { base: 0, labels }.trimmed()
    }

    pub fn zero() -> Self {
        GradedVectorSpace {
            base: 0,
            labels: Vec::new(),
        }
    }

    fn trimmed(mut self) -> Self {
        while self.labels.last().is_some_and(Vec::is_empty) {
            self.labels.pop();
        }
        if self.labels.is_empty() {
            return GradedVectorSpace {
                base: 0,
                labels: Vec::new(),
            };
        }
        let lead = self.labels.iter().take_while(|r| r.is_empty()).count();
        self.labels.drain(..lead);
        self.base += lead as i64;
        self
    }

    /// Lowest degree carried by the storage.
    pub fn base(&self) -> i64 {
        self.base
    }

    /// `dims[i]` is the dimension in degree `base + i`.
    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// Dimensions indexed from degree 0 (panics if anything lives in negative degree).
    pub fn dims_from_zero(&self) -> Vec<usize> {
        let mut out = vec![0; self.base.max(0) as usize];
        assert!(
            self.base >= 0 || self.labels.is_empty(),
            "space has negative degrees"
        );
        out.extend(self.dims());
        out
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.labels_in(degree).len()
    }

    pub fn labels_in(&self, degree: i64) -> &[String] {
        let i = degree - self.base;
        if i < 0 || i as usize >= self.labels.len() {
            &[]
        } else {
            &self.labels[i as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn min_degree(&self) -> i64 {
        self.base
    }

    pub fn max_degree(&self) -> i64 {
        self.base + self.labels.len() as i64 - 1
    }

    /// Degrees carrying at least one basis vector.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(move |(i, _)| self.base + i as i64)
    }

    /// Flattened basis in canonical order: degree ascending, then label order.
    pub fn flat_basis(&self) -> Vec<(i64, String)> {
        self.labels
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |l| (self.base + i as i64, l.clone())))
            .collect()
    }

    pub fn find(&self, label: &str) -> Option<(i64, usize)> {
        self.labels.iter().enumerate().find_map(|(i, r)| {
            r.iter()
                .position(|l| l == label)
                .map(|k| (self.base + i as i64, k))
        })
    }
}

/// `(V ⊗ W)_n = ⊕_{i+j=n} V_i ⊗ W_j`, basis ordered by `i`, then by the `V`
/// basis, then by the `W` basis.
pub fn tensor_space(v: &GradedVectorSpace, w: &GradedVectorSpace) -> GradedVectorSpace {
    if v.total_dim() == 0 || w.total_dim() == 0 {
        return GradedVectorSpace::zero();
    }
    let lo = v.min_degree() + w.min_degree();
    let hi = v.max_degree() + w.max_degree();
    let labels = (lo..=hi)
        .map(|n| {
            let mut row = Vec::new();
            for i in v.min_degree()..=v.max_degree() {
                for a in v.labels_in(i) {
                    for b in w.labels_in(n - i) {
                        row.push(format!("({a},{b})"));
                    }
                }
            }
            row
        })
        .collect();
    GradedVectorSpace { base: lo, labels }.trimmed()
}

/// Index of the pair `(a ∈ V_i, b ∈ W_{n-i})` within `(V⊗W)_n`.
pub fn tensor_index(
    v: &GradedVectorSpace,
    w: &GradedVectorSpace,
    i: i64,
    a: usize,
    n: i64,
    b: usize,
) -> usize {
    let mut off = 0;
    for i2 in v.min_degree()..i {
        off += v.dim(i2) * w.dim(n - i2);
    }
    off + a * w.dim(n - i) + b
}

/// `V[n]` with `V[n]_i = V_{i-n}`.
pub fn shift(v: &GradedVectorSpace, n: i64) -> GradedVectorSpace {
    GradedVectorSpace {
        base: v.base + n,
        labels: v.labels.clone(),
    }
    .trimmed()
}

/// Homogeneous map of degree `k`: `V_i → W_{i+k}`, stored as one sparse block
/// per source degree. Missing blocks are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedLinearMap {
    degree: i64,
    source: GradedVectorSpace,
    target: GradedVectorSpace,
    blocks: BTreeMap<i64, SparseMatrix>,
}

impl GradedLinearMap {
    pub fn zero(source: &GradedVectorSpace, target: &GradedVectorSpace, degree: i64) -> Self {
        GradedLinearMap {
            degree,
            source: source.clone(),
            target: target.clone(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(v: &GradedVectorSpace) -> Self {
        let mut f = Self::zero(v, v, 0);
        for d in v.degrees().collect::<Vec<_>>() {
            f.blocks.insert(d, SparseMatrix::identity(v.dim(d)));
        }
        f
    }

    pub fn set_block(&mut self, source_degree: i64, block: SparseMatrix) -> Result<()> {
        let (r, c) = (
            self.target.dim(source_degree + self.degree),
            self.source.dim(source_degree),
        );
        if (block.rows(), block.cols()) != (r, c) {
            return Err(Error::Structural(format!(
                "block for degree {source_degree} is {}x{}, expected {r}x{c}",
                block.rows(),
                block.cols()
            )));
        }
        if block.is_zero() {
            self.blocks.remove(&source_degree);
        } else {
            self.blocks.insert(source_degree, block);
        }
        Ok(())
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn source(&self) -> &GradedVectorSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedVectorSpace {
        &self.target
    }

    /// Block `V_d → W_{d+k}` (a zero matrix of the right shape when absent).
    pub fn block(&self, source_degree: i64) -> SparseMatrix {
        self.blocks.get(&source_degree).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(
                self.target.dim(source_degree + self.degree),
                self.source.dim(source_degree),
            )
        })
    }

    pub fn blocks(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(SparseMatrix::is_zero)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &GradedLinearMap) -> Result<GradedLinearMap> {
        if rhs.target != self.source {
            return Err(Error::Structural(
                "composition of maps with mismatched spaces".into(),
            ));
        }
        let mut out = Self::zero(&rhs.source, &self.target, self.degree + rhs.degree);
        for (&d, b) in &rhs.blocks {
            let prod = self.block(d + rhs.degree).mul(b);
            out.set_block(d, prod)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &GradedLinearMap) -> Result<GradedLinearMap> {
        if self.degree != other.degree || self.source != other.source || self.target != other.target
        {
            return Err(Error::Structural(
                "sum of maps with different shape or degree".into(),
            ));
        }
        let mut out = self.clone();
        for (&d, b) in &other.blocks {
            let s = out.block(d).add(b);
            out.set_block(d, s)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> GradedLinearMap {
        let mut out = Self::zero(&self.source, &self.target, self.degree);
        for (&d, b) in &self.blocks {
            out.set_block(d, b.scale(s)).expect("same shape");
        }
        out
    }

    pub fn sub(&self, other: &GradedLinearMap) -> Result<GradedLinearMap> {
        self.add(&other.scale(&-Q::one()))
    }
}

/// Graded tensor product `(f⊗g)(a⊗b) = (-1)^{|a||g|} f(a)⊗g(b)`.
pub fn tensor_map(f: &GradedLinearMap, g: &GradedLinearMap) -> Result<GradedLinearMap> {
    let (v, w) = (f.source(), g.source());
    let (v2, w2) = (f.target(), g.target());
    let src = tensor_space(v, w);
    let tgt = tensor_space(v2, w2);
    let deg = f.degree() + g.degree();
    let mut out = GradedLinearMap::zero(&src, &tgt, deg);
    for n in src.degrees().collect::<Vec<_>>() {
        let mut trip = Vec::new();
        for i in v.min_degree()..=v.max_degree() {
            let j = n - i;
            if v.dim(i) == 0 || w.dim(j) == 0 {
                continue;
            }
            let (fb, gb) = (f.block(i), g.block(j));
            let s = sign(i * g.degree());
            for a in 0..v.dim(i) {
                for b in 0..w.dim(j) {
                    let col = tensor_index(v, w, i, a, n, b);
                    for (ra, x) in fb.column(a) {
                        for (rb, y) in gb.column(b) {
                            let row = tensor_index(v2, w2, i + f.degree(), *ra, n + deg, *rb);
                            trip.push((row, col, &s * x * y));
                        }
                    }
                }
            }
        }
        let blk = SparseMatrix::from_triplets(tgt.dim(n + deg), src.dim(n), trip);
        out.set_block(n, blk)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn tensor_space_dims() {
        let k = GradedVectorSpace::from_dims(&[1]);
        assert_eq!(tensor_space(&k, &k).dims(), vec![1]);
        let v = GradedVectorSpace::from_dims(&[2, 1]);
        let w = GradedVectorSpace::from_dims(&[1, 1]);
        assert_eq!(tensor_space(&v, &w).dims(), vec![2, 3, 1]);
        let s = GradedVectorSpace::from_dims(&[0, 1]);
        assert_eq!(tensor_space(&s, &s).dims_from_zero(), vec![0, 0, 1]);
    }

    #[test]
    fn tensor_space_label_order() {
        let v =
            GradedVectorSpace::new(vec![vec!["a".into(), "b".into()], vec!["c".into()]]).unwrap();
        let w = GradedVectorSpace::new(vec![vec!["x".into()], vec!["y".into()]]).unwrap();
        let t = tensor_space(&v, &w);
        assert_eq!(t.labels_in(1), &["(a,y)", "(b,y)", "(c,x)"]);
    }

    #[test]
    fn shifts() {
        let v = GradedVectorSpace::from_dims(&[1, 2]);
        assert_eq!(shift(&v, 0), v);
        assert_eq!(shift(&v, 1).dims_from_zero(), vec![0, 1, 2]);
        assert_eq!(shift(&shift(&v, 1), -1), v);
        assert_eq!(shift(&shift(&v, 2), 3), shift(&v, 5));
    }

    fn odd_map() -> (GradedVectorSpace, GradedLinearMap) {
        // One basis vector in degree 1 and one in degree 2; f maps degree 1 to 2.
        let v = GradedVectorSpace::from_dims(&[0, 1, 1]);
        let mut f = GradedLinearMap::zero(&v, &v, 1);
        f.set_block(1, SparseMatrix::from_triplets(1, 1, [(0, 0, q(1))]))
            .unwrap();
        (v, f)
    }

    #[test]
    fn tensor_map_koszul_sign() {
        let (v, f) = odd_map();
        let g = f.clone();
        let fg = tensor_map(&f, &g).unwrap();
        // a, b in degree 1: (f⊗g)(a⊗b) = (-1)^{1·1} f(a)⊗g(b)
        let blk = fg.block(2);
        let tv = tensor_space(&v, &v);
        let col = tensor_index(&v, &v, 1, 0, 2, 0);
        let row = tensor_index(&v, &v, 2, 0, 4, 0);
        assert_eq!(blk.get(row, col), q(-1));
        assert_eq!(tv.dim(4), 1);
    }

    #[test]
    fn tensor_map_even_identity() {
        let v = GradedVectorSpace::from_dims(&[2, 1]);
        let id = GradedLinearMap::identity(&v);
        let t = tensor_map(&id, &id).unwrap();
        assert_eq!(t, GradedLinearMap::identity(&tensor_space(&v, &v)));
    }

    #[test]
    fn graded_interchange_law() {
        // (f⊗g)∘(f'⊗g') = (-1)^{|g||f'|} (f∘f')⊗(g∘g') with f, f', g, g' odd.
        let v = GradedVectorSpace::from_dims(&[1, 1, 1]);
        let mut f = GradedLinearMap::zero(&v, &v, 1);
        f.set_block(0, SparseMatrix::from_triplets(1, 1, [(0, 0, q(2))]))
            .unwrap();
        f.set_block(1, SparseMatrix::from_triplets(1, 1, [(0, 0, q(3))]))
            .unwrap();
        let g = f.clone();
        let lhs = tensor_map(&f, &g)
            .unwrap()
            .compose(&tensor_map(&f, &g).unwrap())
            .unwrap();
        let rhs = tensor_map(&f.compose(&f).unwrap(), &g.compose(&g).unwrap())
            .unwrap()
            .scale(&q(-1));
        assert_eq!(lhs, rhs);
    }
}

//! Basis tensors over a graded algebra and sparse rational chains of them.

use std::collections::HashMap;

use num_traits::Zero;

use crate::exactlin::{GradedVectorSpace, SparseMatrix};
use crate::scalar::Q;

/// A basis tensor `(a_1, …, a_n)`, each entry a flat basis index.
pub type Tensor = Vec<u32>;

/// Flat basis of a nonnegatively graded space, in degree-then-label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    degrees: Vec<i64>,
    labels: Vec<String>,
    by_suspended: Vec<Vec<u32>>,
}

impl GradedBasis {
    pub fn new(space: &GradedVectorSpace) -> Self {
        let (degrees, labels): (Vec<i64>, Vec<String>) = space.flat_basis().into_iter().unzip();
        let top = degrees.iter().copied().max().unwrap_or(-1);
        let mut by_suspended = vec![Vec::new(); (top + 2).max(0) as usize];
        for (i, &d) in degrees.iter().enumerate() {
            assert!(d >= 0, "graded basis requires nonnegative degrees");
            by_suspended[(d + 1) as usize].push(i as u32);
        }
        GradedBasis {
            degrees,
            labels,
            by_suspended,
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, e: u32) -> i64 {
        self.degrees[e as usize]
    }

    /// Degree in `A[1]`: `|a| + 1`.
    pub fn sdeg(&self, e: u32) -> i64 {
        self.degrees[e as usize] + 1
    }

    pub fn label(&self, e: u32) -> &str {
        &self.labels[e as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }

    pub fn top_degree(&self) -> i64 {
        self.degrees.iter().copied().max().unwrap_or(-1)
    }

    /// Basis elements of A-degree `d`.
    pub fn in_degree(&self, d: i64) -> &[u32] {
        if d < 0 || (d + 1) as usize >= self.by_suspended.len() {
            &[]
        } else {
            &self.by_suspended[(d + 1) as usize]
        }
    }

    /// Sum of A-degrees.
    pub fn tensor_degree(&self, t: &[u32]) -> i64 {
        t.iter().map(|&e| self.degree(e)).sum()
    }

    /// Sum of suspended degrees.
    pub fn tensor_sdeg(&self, t: &[u32]) -> i64 {
        t.iter().map(|&e| self.sdeg(e)).sum()
    }

    pub fn format_tensor(&self, t: &[u32]) -> String {
        let parts: Vec<&str> = t.iter().map(|&e| self.label(e)).collect();
        format!("({})", parts.join(","))
    }

    /// All tensors of length `len` with total suspended degree `sdeg`, in
    /// lexicographic order of basis indices.
    pub fn tensors(&self, len: usize, sdeg: i64) -> Vec<Tensor> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        let all: Vec<u32> = (0..self.len() as u32).collect();
        self.fill(&all, len, sdeg, &mut cur, &mut out);
        out
    }

    fn fill(&self, all: &[u32], left: usize, sdeg: i64, cur: &mut Vec<u32>, out: &mut Vec<Tensor>) {
        if left == 0 {
            if sdeg == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max_s = self.top_degree() + 1;
        for &e in all {
            let rest = sdeg - self.sdeg(e);
            let l = (left - 1) as i64;
            if rest < l || rest > l * max_s {
                continue;
            }
            cur.push(e);
            self.fill(all, left - 1, rest, cur, out);
            cur.pop();
        }
    }

    /// All tensors of length `len` with total A-degree `deg`.
    pub fn tensors_of_degree(&self, len: usize, deg: i64) -> Vec<Tensor> {
        self.tensors(len, deg + len as i64)
    }
}

/// Sparse linear combination of basis tensors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Chain {
    terms: HashMap<Tensor, Q>,
}

impl Chain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(t: Tensor, c: Q) -> Self {
        let mut ch = Chain::new();
        ch.add_term(t, c);
        ch
    }

    pub fn add_term(&mut self, t: Tensor, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain, c: &Q) {
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Chain {
        let mut out = Chain::new();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, t: &[u32]) -> Q {
        self.terms.get(t).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tensor, &Q)> {
        self.terms.iter()
    }

    /// Terms sorted by tensor, for deterministic output.
    pub fn sorted(&self) -> Vec<(Tensor, Q)> {
        let mut v: Vec<(Tensor, Q)> = self
            .terms
            .iter()
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Linear extension of a map on basis tensors.
    pub fn map(&self, mut f: impl FnMut(&[u32], &Q, &mut Chain)) -> Chain {
        let mut out = Chain::new();
        for (t, c) in &self.terms {
            f(t, c, &mut out);
        }
        out
    }
}

/// Indexed list of basis tensors spanning one graded piece of a complex.
#[derive(Clone, Debug, Default)]
pub struct TensorIndex {
    tensors: Vec<Tensor>,
    index: HashMap<Tensor, usize>,
}

impl TensorIndex {
    pub fn new(tensors: Vec<Tensor>) -> Self {
        let index = tensors
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        TensorIndex { tensors, index }
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }

    pub fn tensors(&self) -> &[Tensor] {
        &self.tensors
    }

    pub fn position(&self, t: &[u32]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of a chain; `None` if it has a term outside this index.
    pub fn coords(&self, c: &Chain) -> Option<Vec<(usize, Q)>> {
        let mut v = Vec::with_capacity(c.len());
        for (t, x) in c.iter() {
            v.push((self.position(t)?, x.clone()));
        }
        v.sort_by_key(|p| p.0);
        Some(v)
    }

    pub fn chain(&self, coords: &[Q]) -> Chain {
        let mut c = Chain::new();
        for (i, x) in coords.iter().enumerate() {
            c.add_term(self.tensors[i].clone(), x.clone());
        }
        c
    }
}

/// Matrix of a linear operator given on basis tensors. Panics if an image
/// leaves the target index, which would mean the operator has the wrong degree.
pub fn operator_matrix(
    src: &TensorIndex,
    tgt: &TensorIndex,
    op: impl Fn(&[u32]) -> Chain + Sync,
) -> SparseMatrix {
    use rayon::prelude::*;
    let columns: Vec<Vec<(usize, Q)>> = src
        .tensors()
        .par_iter()
        .map(|t| {
            let img = op(t);
            tgt.coords(&img)
                .unwrap_or_else(|| panic!("operator image of {t:?} leaves the target piece"))
        })
        .collect();
    SparseMatrix::from_columns(tgt.len(), columns)
}

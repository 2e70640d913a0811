//! Column-major sparse rational matrices and fraction-free rank.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Q;

/// Sparse matrix stored by columns; each column is sorted by row with no zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, Q::one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Q)>,
    ) -> Self {
        let mut acc: Vec<HashMap<usize, Q>> = vec![HashMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "triplet ({r},{c}) outside {rows}x{cols}"
            );
            *acc[c].entry(r).or_insert_with(Q::zero) += v;
        }
        let columns = acc
            .into_iter()
            .map(|col| {
                let mut v: Vec<(usize, Q)> =
                    col.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_by_key(|(r, _)| *r);
                v
            })
            .collect();
        SparseMatrix {
            rows,
            cols,
            columns,
        }
    }

    /// Builds a matrix from already-computed columns (entries in any order).
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Q)>>) -> Self {
        let cols = columns.len();
        let trip = columns
            .into_iter()
            .enumerate()
            .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v)));
        Self::from_triplets(rows, cols, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, Q)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        match self.columns[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().map(|(r, c, v)| (r, c, v * s)),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets()
                .chain(other.triplets())
                .map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = Vec::with_capacity(rhs.cols);
        for col in &rhs.columns {
            let mut acc: HashMap<usize, Q> = HashMap::new();
            for (k, v) in col {
                for (r, w) in &self.columns[*k] {
                    *acc.entry(*r).or_insert_with(Q::zero) += v * w;
                }
            }
            out.push(acc.into_iter().collect());
        }
        Self::from_columns(self.rows, out)
    }

    /// Applies the matrix to a dense vector.
    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![Q::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                y[*r] += v * &x[c];
            }
        }
        y
    }

    /// Block matrix `[[a, b], [c, d]]`; any block may be `None` (zero).
    pub fn block(
        row_sizes: (usize, usize),
        col_sizes: (usize, usize),
        blocks: [[Option<&SparseMatrix>; 2]; 2],
    ) -> Self {
        let mut trip = Vec::new();
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, blk) in row.iter().enumerate() {
                if let Some(m) = blk {
                    let (r0, c0) = (
                        if bi == 0 { 0 } else { row_sizes.0 },
                        if bj == 0 { 0 } else { col_sizes.0 },
                    );
                    let rs = if bi == 0 { row_sizes.0 } else { row_sizes.1 };
                    let cs = if bj == 0 { col_sizes.0 } else { col_sizes.1 };
                    assert_eq!((m.rows, m.cols), (rs, cs), "block shape mismatch");
                    trip.extend(m.triplets().map(|(r, c, v)| (r + r0, c + c0, v.clone())));
                }
            }
        }
        Self::from_triplets(row_sizes.0 + row_sizes.1, col_sizes.0 + col_sizes.1, trip)
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r][c] = v.clone();
        }
        d
    }

    /// Exact rank by fraction-free sparse elimination.
    pub fn rank(&self) -> usize {
        let cols: Vec<Vec<(usize, BigInt)>> = self
            .columns
            .iter()
            .map(|c| primitive_integer_column(c))
            .collect();
        if let Some(small) = to_small(&cols) {
            if let Some(r) = eliminate(small) {
                return r;
            }
        }
        eliminate(cols).expect("big integer elimination cannot overflow")
    }
}

/// Scales a rational column to a primitive integer vector spanning the same line.
fn primitive_integer_column(col: &[(usize, Q)]) -> Vec<(usize, BigInt)> {
    if col.is_empty() {
        return Vec::new();
    }
    let l = col
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints: Vec<(usize, BigInt)> = col
        .iter()
        .map(|(r, v)| (*r, v.numer() * (&l / v.denom())))
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| Integer::gcd(&acc, v));
    ints.into_iter().map(|(r, v)| (r, v / &g)).collect()
}

fn to_small(cols: &[Vec<(usize, BigInt)>]) -> Option<Vec<Vec<(usize, i64)>>> {
    cols.iter()
        .map(|c| c.iter().map(|(r, v)| v.to_i64().map(|x| (*r, x))).collect())
        .collect()
}

/// Integer arithmetic used by the elimination; `None` signals overflow.
trait ElimInt: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn neg(&self) -> Option<Self>;
}

impl ElimInt for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl ElimInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Incremental echelon reduction over an integral domain.
///
/// Each pivot vector is keyed by its leading row. An incoming vector `v` with
/// leading entry `c` at a pivot row whose pivot entry is `p` is replaced by
/// `(p/g)·v − (c/g)·pivot` with `g = gcd(p, c)`, then divided by its content.
/// No division ever leaves the ring.
fn eliminate<T: ElimInt>(mut cols: Vec<Vec<(usize, T)>>) -> Option<usize> {
    cols.retain(|c| !c.is_empty());
    cols.sort_by_key(Vec::len);
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut rank = 0;
    for mut v in cols {
        loop {
            let Some((lead, c)) = v.first().cloned() else {
                break;
            };
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, v);
                    rank += 1;
                    break;
                }
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&c);
                    let (a, b) = (pv.div(&g), c.div(&g));
                    v = combine(&v, &a, p, &b)?;
                }
            }
        }
    }
    Some(rank)
}

/// Returns the primitive part of `a·x − b·y` (both sorted sparse vectors).
fn combine<T: ElimInt>(
    x: &[(usize, T)],
    a: &T,
    y: &[(usize, T)],
    b: &T,
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, x[i].1.mul(a)?));
            i += 1;
        } else if take_y {
            out.push((y[j].0, y[j].1.mul(b)?.neg()?));
            j += 1;
        } else {
            let v = x[i].1.mul(a)?.sub(&y[j].1.mul(b)?)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    if let Some(first) = out.first() {
        let mut g = first.1.clone();
        for (_, v) in &out[1..] {
            if g.is_unit() {
                break;
            }
            g = g.gcd(v);
        }
        if !g.is_unit() && !g.is_zero() {
            for e in &mut out {
                e.1 = e.1.div(&g);
            }
        }
    }
    Some(out)
}

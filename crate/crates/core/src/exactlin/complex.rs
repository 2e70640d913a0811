//! Homological chain complexes of sparse rational matrices.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

#[derive(Debug)]
struct Differential {
    matrix: SparseMatrix,
    rank: OnceLock<usize>,
}

/// Finite window of a chain complex: `d_n : C_n → C_{n-1}` for the degrees
/// that were supplied. Ranks are cached.
#[derive(Debug, Default)]
pub struct ChainComplex {
    diffs: BTreeMap<i64, Differential>,
}

impl ChainComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `d_n`. Its column count is `dim C_n`, its row count `dim C_{n-1}`.
    pub fn insert(&mut self, n: i64, d: SparseMatrix) -> Result<()> {
        if let Some(next) = self.diffs.get(&(n + 1)) {
            if next.matrix.rows() != d.cols() {
                return Err(Error::Structural(format!(
                    "d_{} and d_{n} disagree on dim C_{n}",
                    n + 1
                )));
            }
        }
        if let Some(prev) = self.diffs.get(&(n - 1)) {
            if prev.matrix.cols() != d.rows() {
                return Err(Error::Structural(format!(
                    "d_{n} and d_{} disagree on dim C_{}",
                    n - 1,
                    n - 1
                )));
            }
        }
        self.diffs.insert(
            n,
            Differential {
                matrix: d,
                rank: OnceLock::new(),
            },
        );
        Ok(())
    }

    pub fn differential(&self, n: i64) -> Option<&SparseMatrix> {
        self.diffs.get(&n).map(|d| &d.matrix)
    }

    pub fn dim(&self, n: i64) -> Option<usize> {
        self.diffs
            .get(&n)
            .map(|d| d.matrix.cols())
            .or_else(|| self.diffs.get(&(n + 1)).map(|d| d.matrix.rows()))
    }

    pub fn rank(&self, n: i64) -> Result<usize> {
        let d = self
            .diffs
            .get(&n)
            .ok_or_else(|| Error::Range(format!("d_{n} not in window")))?;
        Ok(*d.rank.get_or_init(|| d.matrix.rank()))
    }

    /// Checks `d_{n-1} ∘ d_n = 0` wherever both are present.
    pub fn check_square_zero(&self) -> Result<()> {
        for (&n, d) in &self.diffs {
            if let Some(prev) = self.diffs.get(&(n - 1)) {
                if !prev.matrix.mul(&d.matrix).is_zero() {
                    return Err(Error::Invariant(format!("d_{} ∘ d_{n} ≠ 0", n - 1)));
                }
            }
        }
        Ok(())
    }

    /// `dim H_n = dim C_n - rank d_n - rank d_{n+1}`. Needs both differentials.
    pub fn homology_dim(&self, n: i64) -> Result<usize> {
        let dim = self
            .dim(n)
            .ok_or_else(|| Error::Range(format!("C_{n} not in window")))?;
        if !self.diffs.contains_key(&(n + 1)) {
            return Err(Error::Range(format!("d_{} not in window", n + 1)));
        }
        let (r_in, r_out) = (self.rank(n + 1)?, self.rank(n)?);
        dim.checked_sub(r_in + r_out)
            .ok_or_else(|| Error::Invariant(format!("ranks around C_{n} exceed its dimension")))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.diffs.keys().copied()
    }
}

/// Rank of the map on homology induced by a chain map component
/// `f : C_n → C'_m`, given `d_src = d_n` on the source and
/// `d_tgt_in = d'_{m+1}` on the target.
///
/// Uses `rank [[d_src, 0], [f, d_tgt_in]] - rank d_src - rank d_tgt_in`.
pub fn induced_rank(
    d_src: &SparseMatrix,
    f: &SparseMatrix,
    d_tgt_in: &SparseMatrix,
) -> Result<usize> {
    if f.cols() != d_src.cols() || f.rows() != d_tgt_in.rows() {
        return Err(Error::Structural(format!(
            "induced map shape {}x{} does not fit d_src {}x{} and d_tgt_in {}x{}",
            f.rows(),
            f.cols(),
            d_src.rows(),
            d_src.cols(),
            d_tgt_in.rows(),
            d_tgt_in.cols()
        )));
    }
    let m = SparseMatrix::block(
        (d_src.rows(), f.rows()),
        (d_src.cols(), d_tgt_in.cols()),
        [[Some(d_src), None], [Some(f), Some(d_tgt_in)]],
    );
    let total = m.rank();
    let (a, b) = (d_src.rank(), d_tgt_in.rank());
    total.checked_sub(a + b).ok_or_else(|| {
        Error::Invariant("block rank below sum of differential ranks; not a chain map".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn circle() -> ChainComplex {
        // Two vertices, two edges, each edge from v0 to v1 in opposite orientation.
        let mut c = ChainComplex::new();
        c.insert(0, SparseMatrix::zeros(0, 2)).unwrap();
        c.insert(
            1,
            SparseMatrix::from_triplets(
                2,
                2,
                [(0, 0, q(-1)), (1, 0, q(1)), (0, 1, q(1)), (1, 1, q(-1))],
            ),
        )
        .unwrap();
        c.insert(2, SparseMatrix::zeros(2, 0)).unwrap();
        c
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        c.check_square_zero().unwrap();
        assert_eq!(c.homology_dim(0).unwrap(), 1);
        assert_eq!(c.homology_dim(1).unwrap(), 1);
        assert!(matches!(c.homology_dim(2), Err(Error::Range(_))));
    }

    #[test]
    fn induced_rank_identity_and_zero() {
        let c = circle();
        let d1 = c.differential(1).unwrap();
        let d2 = c.differential(2).unwrap();
        let id = SparseMatrix::identity(2);
        assert_eq!(induced_rank(d1, &id, d2).unwrap(), 1);
        // A map that is a boundary on the nose induces zero.
        let z = SparseMatrix::zeros(2, 2);
        assert_eq!(induced_rank(d1, &z, d2).unwrap(), 0);
    }

    #[test]
    fn mismatched_insert_rejected() {
        let mut c = ChainComplex::new();
        c.insert(1, SparseMatrix::zeros(1, 3)).unwrap();
        assert!(c.insert(2, SparseMatrix::zeros(2, 1)).is_err());
    }
}

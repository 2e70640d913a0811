//! Classical Hochschild and cyclic homology of ordinary unital algebras.
//!
//! This module deliberately shares nothing with the A∞ pipeline beyond the
//! scalar type and the dense eliminator: it works from a multiplication
//! table, uses the normalized complex `A ⊗ Ā^{⊗n}` with the textbook signs
//! `b = Σ (−1)^i d_i` and `B = Σ (−1)^{ni} (1, a_i, …, a_{i−1})`, and builds
//! dense matrices.

use num_traits::{One, Zero};

use crate::algebra::AInfinityAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::dense;
use crate::scalar::Q;

/// Unital associative algebra given by `table[i][j] = e_i · e_j` in coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalAlgebra {
    dim: usize,
    unit: usize,
    table: Vec<Vec<Vec<Q>>>,
}

type Dense = Vec<Vec<Q>>;

fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![Q::zero(); c]; r]
}

impl ClassicalAlgebra {
    pub fn new(unit: usize, table: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let dim = table.len();
        if unit >= dim
            || table
                .iter()
                .any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return Err(Error::Structural(
                "multiplication table has the wrong shape".into(),
            ));
        }
        Ok(ClassicalAlgebra { dim, unit, table })
    }

    /// Reads the binary product of a degree-0 algebra with unit and no other operations.
    pub fn from_ainf(a: &AInfinityAlgebra) -> Result<Self> {
        if a.top_degree() > 0 || a.m().arities().iter().any(|&n| n != 2) {
            return Err(Error::Precondition(
                "classical oracle needs an ordinary degree-0 algebra".into(),
            ));
        }
        let unit = a
            .unit()
            .ok_or_else(|| Error::Precondition("classical oracle needs a unit".into()))?
            as usize;
        let n = a.dim();
        let mut table = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for (o, v) in a.mul(&[i as u32, j as u32]) {
                    cell[*o as usize] = v.clone();
                }
            }
        }
        Self::new(unit, table)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Non-unit basis indices, the basis of `Ā`.
    fn reduced(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| i != self.unit).collect()
    }

    /// Basis of `A ⊗ Ā^{⊗n}` as index tuples.
    fn chains(&self, n: i64) -> Vec<Vec<usize>> {
        if n < 0 {
            return Vec::new();
        }
        let red = self.reduced();
        let mut out: Vec<Vec<usize>> = (0..self.dim).map(|a| vec![a]).collect();
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    red.iter().map(move |&r| {
                        let mut u = t.clone();
                        u.push(r);
                        u
                    })
                })
                .collect();
        }
        out
    }

    fn position(&self, t: &[usize]) -> usize {
        let red_pos = |x: usize| if x < self.unit { x } else { x - 1 };
        let r = self.dim - 1;
        t[1..].iter().fold(t[0], |acc, &x| acc * r + red_pos(x))
    }

    /// Adds `c · t` to the column, dropping it if it is degenerate.
    fn push(&self, col: &mut [Q], t: &[usize], c: &Q) {
        if t[1..].contains(&self.unit) || c.is_zero() {
            return;
        }
        col[self.position(t)] += c;
    }

    /// Normalized Hochschild boundary `b_n : C̄_n → C̄_{n−1}` as a dense matrix.
    pub fn b(&self, n: i64) -> Dense {
        let src = self.chains(n);
        let tgt_len = self.chains(n - 1).len();
        let mut m = zeros(tgt_len, src.len());
        if n <= 0 {
            return m;
        }
        let n = n as usize;
        for (j, t) in src.iter().enumerate() {
            let mut col = vec![Q::zero(); tgt_len];
            for i in 0..n {
                let s = if i % 2 == 0 { Q::one() } else { -Q::one() };
                for (o, v) in self.table[t[i]][t[i + 1]].iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let mut u: Vec<usize> = t[..i].to_vec();
                    u.push(o);
                    u.extend_from_slice(&t[i + 2..]);
                    self.push(&mut col, &u, &(&s * v));
                }
            }
            let s = if n.is_multiple_of(2) { Q::one() } else { -Q::one() };
            for (o, v) in self.table[t[n]][t[0]].iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let mut u = vec![o];
                u.extend_from_slice(&t[1..n]);
                self.push(&mut col, &u, &(&s * v));
            }
            for (r, v) in col.into_iter().enumerate() {
                m[r][j] = v;
            }
        }
        m
    }

    /// Normalized Connes operator `B_n : C̄_n → C̄_{n+1}`.
    pub fn connes_b(&self, n: i64) -> Dense {
        let src = self.chains(n);
        let tgt_len = self.chains(n + 1).len();
        let mut m = zeros(tgt_len, src.len());
        if n < 0 {
            return m;
        }
        let n = n as usize;
        for (j, t) in src.iter().enumerate() {
            for i in 0..=n {
                let s = if (n * i).is_multiple_of(2) {
                    Q::one()
                } else {
                    -Q::one()
                };
                let mut u = vec![self.unit];
                u.extend_from_slice(&t[i..]);
                u.extend_from_slice(&t[..i]);
                if u[1..].contains(&self.unit) {
                    continue;
                }
                m[self.position(&u)][j] += s;
            }
        }
        m
    }

    /// Column sizes of the `(b, B)` total complex in degree `n`.
    fn tot_layout(&self, n: i64) -> Vec<usize> {
        if n < 0 {
            return Vec::new();
        }
        (0..=n / 2).map(|k| self.chains(n - 2 * k).len()).collect()
    }

    /// `b + B : Tot_n → Tot_{n−1}`.
    pub fn tot(&self, n: i64) -> Dense {
        let src = self.tot_layout(n);
        let tgt = self.tot_layout(n - 1);
        let rows: usize = tgt.iter().sum();
        let cols: usize = src.iter().sum();
        let mut m = zeros(rows, cols);
        let mut c0 = 0;
        for (k, &w) in src.iter().enumerate() {
            let deg = n - 2 * k as i64;
            let mut r0 = 0;
            for (k2, &h) in tgt.iter().enumerate() {
                let blk = if k2 == k && deg >= 1 {
                    Some(self.b(deg))
                } else if k >= 1 && k2 == k - 1 {
                    Some(self.connes_b(deg))
                } else {
                    None
                };
                if let Some(b) = blk {
                    for r in 0..h {
                        for c in 0..w {
                            m[r0 + r][c0 + c] = b[r][c].clone();
                        }
                    }
                }
                r0 += h;
            }
            c0 += w;
        }
        m
    }

    pub fn hh_dim(&self, n: i64) -> usize {
        let dim = self.chains(n).len();
        dim - dense::rank(&self.b(n), dim) - dense::rank(&self.b(n + 1), self.chains(n + 1).len())
    }

    pub fn hc_dim(&self, n: i64) -> usize {
        let dim: usize = self.tot_layout(n).iter().sum();
        let next: usize = self.tot_layout(n + 1).iter().sum();
        dim - dense::rank(&self.tot(n), dim) - dense::rank(&self.tot(n + 1), next)
    }

    /// `S^t : Tot_n → Tot_{n−2t}`, dropping the first `t` columns.
    fn s_power(&self, n: i64, t: usize) -> Dense {
        let src = self.tot_layout(n);
        let cols: usize = src.iter().sum();
        let skip: usize = src[..t.min(src.len())].iter().sum();
        let rows = cols - skip;
        let mut m = zeros(rows, cols);
        for i in 0..rows {
            m[i][skip + i] = Q::one();
        }
        m
    }

    /// Rank of `S^t : HC_n → HC_{n−2t}`.
    pub fn s_power_rank(&self, n: i64, t: usize) -> usize {
        let d_src = self.tot(n);
        let f = self.s_power(n, t);
        let d_tgt = self.tot(n - 2 * t as i64 + 1);
        let (ns, nt) = (
            self.tot_layout(n).iter().sum::<usize>(),
            self.tot_layout(n - 2 * t as i64 + 1).iter().sum::<usize>(),
        );
        let mut block = zeros(d_src.len() + f.len(), ns + nt);
        for (r, row) in d_src.iter().enumerate() {
            block[r][..ns].clone_from_slice(row);
        }
        for (r, row) in f.iter().enumerate() {
            block[d_src.len() + r][..ns].clone_from_slice(row);
            block[d_src.len() + r][ns..].clone_from_slice(&d_tgt[r]);
        }
        dense::rank(&block, ns + nt) - dense::rank(&d_src, ns) - dense::rank(&d_tgt, nt)
    }

    /// Periodic cyclic homology of the given parity as the image of `S^L` from
    /// the highest level `≤ max_degree`, provided it agrees with the image
    /// from one level lower. `None` if it does not.
    pub fn hp_dim(&self, parity: i64, max_degree: i64) -> Option<usize> {
        let levels: Vec<i64> = (0..)
            .map(|j| parity + 2 * j)
            .take_while(|&n| n <= max_degree)
            .collect();
        if levels.len() < 3 {
            return None;
        }
        let top = levels.len() - 1;
        let a = self.s_power_rank(levels[top], top);
        let b = self.s_power_rank(levels[top - 1], top - 1);
        (a == b).then_some(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ground_field() {
        let k = ClassicalAlgebra::from_ainf(&fixtures::ground_field()).unwrap();
        assert_eq!(
            (0..5).map(|n| k.hh_dim(n)).collect::<Vec<_>>(),
            vec![1, 0, 0, 0, 0]
        );
        assert_eq!(
            (0..5).map(|n| k.hc_dim(n)).collect::<Vec<_>>(),
            vec![1, 0, 1, 0, 1]
        );
        assert_eq!(k.hp_dim(0, 4), Some(1));
    }

    #[test]
    fn b_squares_to_zero() {
        let a = ClassicalAlgebra::from_ainf(&fixtures::truncated_polynomial(3)).unwrap();
        for n in 1..4 {
            let (b0, b1) = (a.b(n), a.b(n + 1));
            for r in 0..b0.len() {
                for c in 0..b1[0].len() {
                    let v: Q = (0..b1.len()).map(|k| &b0[r][k] * &b1[k][c]).sum();
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn rejects_graded_input() {
        assert!(ClassicalAlgebra::from_ainf(&fixtures::dg_fixture()).is_err());
    }
}

//! Dense rational linear algebra by naive Gauss-Jordan elimination.
//!
//! This is deliberately the plain textbook algorithm. It backs small linear
//! solves and serves as the reference against which the sparse fraction-free
//! rank is checked.

use num_traits::{One, Zero};

use crate::scalar::Q;

/// Reduced row echelon form result.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn rref(mat: &[Vec<Q>], cols: usize) -> Rref {
    let mut m: Vec<Vec<Q>> = mat.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Rref {
        rows: m,
        pivots,
        cols,
    }
}

pub fn rank(mat: &[Vec<Q>], cols: usize) -> usize {
    rref(mat, cols).pivots.len()
}

/// Basis of the null space `{x : mat·x = 0}`.
pub fn kernel(mat: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let r = rref(mat, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &p) in r.rows.iter().zip(&r.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `mat·x = rhs`, or `None` when the system is inconsistent.
pub fn solve(mat: &[Vec<Q>], cols: usize, rhs: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(mat.len(), rhs.len());
    let aug: Vec<Vec<Q>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let r = rref(&aug, cols + 1);
    if r.pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Incrementally maintained echelon basis of a subspace of `Q^n`.
///
/// Used to reduce vectors modulo a subspace and to test membership.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Reduces `v` against the basis; the result has zeros at all pivots.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns `true` when it was independent of the current span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &r[p];
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<Q>> {
        self.rows.iter().map(|(_, r)| r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn rank_kernel_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a, 3), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot: Q = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        let x = solve(&a, 3, &[q(6), q(12), q(2)]).unwrap();
        assert_eq!(a[2].iter().zip(&x).map(|(p, q)| p * q).sum::<Q>(), q(2));
        assert!(solve(&a, 3, &[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[q(1), q(1), q(0)]));
        assert!(!e.insert(&[q(2), q(2), q(0)]));
        assert!(e.contains(&[q(-3), q(-3), q(0)]));
        assert!(!e.contains(&[q(0), q(0), q(1)]));
    }
}

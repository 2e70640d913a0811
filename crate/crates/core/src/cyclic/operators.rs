//! Operators on Hochschild chains `(a_0, …, a_n)`.
//!
//! The Hochschild degree of `(a_0, …, a_n)` is `n + Σ|a_i|`, which equals the
//! total suspended degree minus one. All operators act on basis tensors and
//! extend linearly.

use num_traits::One;

use crate::algebra::AInfinityAlgebra;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::scalar::{sign, Q};
use crate::tensor::{Chain, GradedBasis, Tensor};

/// Hochschild degree of a chain tensor.
pub fn hochschild_degree(basis: &GradedBasis, t: &[u32]) -> i64 {
    basis.tensor_sdeg(t) - 1
}

/// `λ^r`: moves the last `r` entries to the front with the Koszul sign of
/// passing them over the rest.
pub fn rotate(basis: &GradedBasis, t: &[u32], r: usize) -> (Q, Tensor) {
    let n = t.len();
    let r = r % n.max(1);
    let (rest, moved) = t.split_at(n - r);
    let s = sign(basis.tensor_sdeg(moved) * basis.tensor_sdeg(rest));
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(moved);
    out.extend_from_slice(rest);
    (s, out)
}

/// `λ(a_0..a_n) = (−1)^{(|a_n|+1)(Σ_{i<n}|a_i| + n)} (a_n, a_0, …, a_{n−1})`.
pub fn lambda(basis: &GradedBasis, t: &[u32]) -> (Q, Tensor) {
    rotate(basis, t, 1)
}

pub fn lambda_inv(basis: &GradedBasis, t: &[u32]) -> (Q, Tensor) {
    rotate(basis, t, t.len().saturating_sub(1))
}

/// `N = 1 + λ + ⋯ + λ^n`.
pub fn norm(basis: &GradedBasis, t: &[u32], c: &Q, out: &mut Chain) {
    for r in 0..t.len() {
        let (s, u) = rotate(basis, t, r);
        out.add_term(u, s * c);
    }
}

/// `1 − λ`.
pub fn one_minus_lambda(basis: &GradedBasis, t: &[u32], c: &Q, out: &mut Chain) {
    out.add_term(t.to_vec(), c.clone());
    let (s, u) = lambda(basis, t);
    out.add_term(u, -(s * c));
}

/// `b'_f`: the bar-type part, inserting `f` at every slot.
pub fn b_prime_with(f: &Cochain, basis: &GradedBasis, t: &[u32], c: &Q, out: &mut Chain) {
    f.coderivation_apply(t, c, basis, out);
}

/// `b_f = b'_f` plus the wrap-around terms: for each `r ≥ 1` the last `r`
/// entries are rotated to the front (Koszul sign) and every component of
/// arity greater than `r` is applied at the front, so its window straddles
/// the seam between `a_n` and `a_0`.
pub fn b_with(f: &Cochain, basis: &GradedBasis, t: &[u32], c: &Q, out: &mut Chain) {
    f.coderivation_apply(t, c, basis, out);
    let n = t.len();
    for r in 1..n {
        let (s, u) = rotate(basis, t, r);
        for (arity, comp) in f.components() {
            if arity <= r || arity > n {
                continue;
            }
            for (o, v) in comp.eval(&u[..arity]) {
                let mut img = Vec::with_capacity(n + 1 - arity);
                img.push(*o);
                img.extend_from_slice(&u[arity..]);
                out.add_term(img, &s * v * c);
            }
        }
    }
}

/// Cyclic operators attached to one A∞-algebra.
#[derive(Clone, Copy, Debug)]
pub struct CyclicOperators<'a> {
    alg: &'a AInfinityAlgebra,
}

impl<'a> CyclicOperators<'a> {
    pub fn new(alg: &'a AInfinityAlgebra) -> Self {
        CyclicOperators { alg }
    }

    pub fn algebra(&self) -> &'a AInfinityAlgebra {
        self.alg
    }

    fn basis(&self) -> &'a GradedBasis {
        self.alg.basis()
    }

    pub fn lambda(&self, t: &[u32]) -> Chain {
        let (s, u) = lambda(self.basis(), t);
        Chain::single(u, s)
    }

    pub fn norm(&self, t: &[u32]) -> Chain {
        let mut out = Chain::new();
        norm(self.basis(), t, &Q::one(), &mut out);
        out
    }

    pub fn one_minus_lambda(&self, t: &[u32]) -> Chain {
        let mut out = Chain::new();
        one_minus_lambda(self.basis(), t, &Q::one(), &mut out);
        out
    }

    pub fn b_prime(&self, t: &[u32]) -> Chain {
        let mut out = Chain::new();
        b_prime_with(self.alg.m(), self.basis(), t, &Q::one(), &mut out);
        out
    }

    pub fn b(&self, t: &[u32]) -> Chain {
        let mut out = Chain::new();
        b_with(self.alg.m(), self.basis(), t, &Q::one(), &mut out);
        out
    }

    fn unit(&self) -> Result<u32> {
        self.alg
            .unit()
            .ok_or_else(|| Error::Precondition("operator needs a unit".into()))
    }

    /// `s(a_0, …, a_n) = (1, a_0, …, a_n)`.
    pub fn s(&self, t: &[u32]) -> Result<Chain> {
        let mut u = Vec::with_capacity(t.len() + 1);
        u.push(self.unit()?);
        u.extend_from_slice(t);
        Ok(Chain::single(u, Q::one()))
    }

    /// Connes' operator `B = (1 − λ) s N` on the unnormalized complex.
    pub fn connes_b(&self, t: &[u32]) -> Result<Chain> {
        let u = self.unit()?;
        let mut out = Chain::new();
        for r in 0..t.len() {
            let (s, rot) = rotate(self.basis(), t, r);
            let mut st = Vec::with_capacity(t.len() + 1);
            st.push(u);
            st.extend_from_slice(&rot);
            one_minus_lambda(self.basis(), &st, &s, &mut out);
        }
        Ok(out)
    }

    /// `B = s N` followed by projection to normalized chains.
    pub fn connes_b_normalized(&self, t: &[u32]) -> Result<Chain> {
        let u = self.unit()?;
        let mut out = Chain::new();
        for r in 0..t.len() {
            let (s, rot) = rotate(self.basis(), t, r);
            if rot.contains(&u) {
                continue;
            }
            let mut st = Vec::with_capacity(t.len() + 1);
            st.push(u);
            st.extend_from_slice(&rot);
            out.add_term(st, s);
        }
        Ok(out)
    }

    /// True when a unit sits in one of the positions `1..=n`.
    pub fn is_degenerate(&self, t: &[u32]) -> bool {
        self.alg.unit().is_some_and(|u| t[1..].contains(&u))
    }

    /// Drops degenerate terms.
    pub fn normalize(&self, c: Chain) -> Chain {
        if self.alg.unit().is_none() {
            return c;
        }
        c.map(|t, v, out| {
            if !self.is_degenerate(t) {
                out.add_term(t.to_vec(), v.clone());
            }
        })
    }

    /// Applies an operator given on basis tensors to a chain.
    pub fn apply(&self, c: &Chain, op: impl Fn(&[u32]) -> Chain) -> Chain {
        c.map(|t, v, out| {
            for (u, w) in op(t).iter() {
                out.add_term(u.clone(), w * v);
            }
        })
    }
}

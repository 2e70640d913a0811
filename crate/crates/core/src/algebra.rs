//! A∞-algebras given by structure constants.

use num_traits::{One, Zero};

use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exactlin::{dense, ChainComplex, GradedVectorSpace, SparseMatrix};
use crate::scalar::{sign, Q};
use crate::tensor::{GradedBasis, Tensor};

/// A failed Stasheff identity `Σ_{i+j=n+1} m_i ∘ m_j = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct StasheffViolation {
    pub arity: usize,
    pub input: Tensor,
    pub value: Vec<(u32, Q)>,
}

/// Checks `m ∘ m = 0`. The circle product is computed exactly on the
/// structure constants, so every arity is covered. One witness per arity.
pub fn check_stasheff(m: &Cochain, basis: &GradedBasis) -> Vec<StasheffViolation> {
    let mm = m.circle(m, basis);
    mm.components()
        .map(|(n, comp)| {
            let (t, v) = comp
                .entries()
                .next()
                .expect("nonzero component has an entry");
            StasheffViolation {
                arity: n,
                input: t.clone(),
                value: v.clone(),
            }
        })
        .collect()
}

/// Finite-dimensional nonnegatively graded A∞-algebra over the rationals.
///
/// The structure cochain `m` has suspended degree −1, so `|m_n| = n − 2`.
/// A DG algebra `(d, ·)` corresponds to `m_1 = d`, `m_2(a, b) = (−1)^{|a|} ab`.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfinityAlgebra {
    space: GradedVectorSpace,
    basis: GradedBasis,
    m: Cochain,
    unit: Option<u32>,
}

impl AInfinityAlgebra {
    /// Validates degrees, the Stasheff identities and, if a unit is given,
    /// strict unitality.
    pub fn new(space: GradedVectorSpace, m: Cochain, unit: Option<u32>) -> Result<Self> {
        let a = Self::new_unchecked(space, m, unit)?;
        if let Some(v) = check_stasheff(&a.m, &a.basis).first() {
            return Err(Error::Invariant(format!(
                "Stasheff identity fails at arity {} on {}",
                v.arity,
                a.basis.format_tensor(&v.input)
            )));
        }
        a.check_unit()?;
        Ok(a)
    }

    /// Only structural and degree checks.
    pub fn new_unchecked(space: GradedVectorSpace, m: Cochain, unit: Option<u32>) -> Result<Self> {
        if space.total_dim() > 0 && space.min_degree() < 0 {
            return Err(Error::Structural(
                "A∞-algebras here are nonnegatively graded".into(),
            ));
        }
        if m.sdeg() != -1 && !m.is_zero() {
            return Err(Error::Degree(format!(
                "structure cochain has suspended degree {}, expected -1",
                m.sdeg()
            )));
        }
        let m = if m.is_zero() { Cochain::zero(-1) } else { m };
        if m.component(0).is_some() {
            return Err(Error::Structural(
                "structure cochain has a weight-0 component".into(),
            ));
        }
        let basis = GradedBasis::new(&space);
        m.check_degrees(&basis)?;
        if let Some(u) = unit {
            if u as usize >= basis.len() || basis.degree(u) != 0 {
                return Err(Error::Structural(
                    "unit must be a degree-0 basis element".into(),
                ));
            }
        }
        Ok(AInfinityAlgebra {
            space,
            basis,
            m,
            unit,
        })
    }

    /// Builds from a DG algebra: `d` and the plain product `ab` as
    /// `(inputs, output, coeff)` lists.
    pub fn from_dg(
        space: GradedVectorSpace,
        differential: &[(u32, u32, Q)],
        product: &[(u32, u32, u32, Q)],
        unit: Option<u32>,
    ) -> Result<Self> {
        let basis = GradedBasis::new(&space);
        let mut m = Cochain::zero(-1);
        for (a, o, c) in differential {
            m.add(&[*a], *o, c.clone());
        }
        for (a, b, o, c) in product {
            m.add(&[*a, *b], *o, sign(basis.degree(*a)) * c);
        }
        Self::new(space, m, unit)
    }

    /// Ordinary associative algebra in degree 0 from a multiplication table.
    pub fn from_associative(
        labels: Vec<String>,
        product: &[(u32, u32, u32, Q)],
        unit: Option<u32>,
    ) -> Result<Self> {
        let space = GradedVectorSpace::new(vec![labels])?;
        Self::from_dg(space, &[], product, unit)
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn m(&self) -> &Cochain {
        &self.m
    }

    pub fn unit(&self) -> Option<u32> {
        self.unit
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> i64 {
        self.basis.top_degree()
    }

    /// `m_n` evaluated on a basis tensor.
    pub fn mul(&self, input: &[u32]) -> &[(u32, Q)] {
        self.m.eval(input)
    }

    /// Checks `m_2(1,a) = a`, `m_2(a,1) = (−1)^{|a|} a` and that every other
    /// `m_n` vanishes when an argument is the unit.
    pub fn check_unit(&self) -> Result<()> {
        let Some(u) = self.unit else { return Ok(()) };
        for a in 0..self.dim() as u32 {
            let left = self.m.eval(&[u, a]);
            let right = self.m.eval(&[a, u]);
            let s = sign(self.basis.degree(a));
            if left != [(a, Q::one())] || right != [(a, s)] {
                return Err(Error::Structural(format!(
                    "unit law fails on {}",
                    self.basis.label(a)
                )));
            }
        }
        for (n, comp) in self.m.components() {
            if n == 2 {
                continue;
            }
            if let Some((t, _)) = comp.entries().find(|(t, _)| t.contains(&u)) {
                return Err(Error::Structural(format!(
                    "m_{n} does not vanish on {} which contains the unit",
                    self.basis.format_tensor(t)
                )));
            }
        }
        Ok(())
    }

    /// `m_1 : A_i → A_{i−1}` as a matrix in the per-degree bases.
    pub fn m1_block(&self, i: i64) -> SparseMatrix {
        let src = self.basis.in_degree(i);
        let tgt = self.basis.in_degree(i - 1);
        let mut trip = Vec::new();
        for (c, &a) in src.iter().enumerate() {
            for (o, v) in self.m.eval(&[a]) {
                let r = tgt.iter().position(|x| x == o).expect("degree checked");
                trip.push((r, c, v.clone()));
            }
        }
        SparseMatrix::from_triplets(tgt.len(), src.len(), trip)
    }

    /// The complex `(A, m_1)`.
    pub fn underlying_complex(&self) -> ChainComplex {
        let mut c = ChainComplex::new();
        for i in 0..=self.top_degree() + 1 {
            c.insert(i, self.m1_block(i)).expect("consistent shapes");
        }
        c
    }

    /// Dimensions of `H_i(A, m_1)` for `i = 0..=top`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let c = self.underlying_complex();
        (0..=self.top_degree())
            .map(|i| c.homology_dim(i).expect("window covers all degrees"))
            .collect()
    }

    /// Transports the structure along a degree-preserving change of basis:
    /// `m'_n = P ∘ m_n ∘ (P^{-1})^{⊗n}`, where column `j` of the dense block
    /// `p[d]` is the image of the `j`-th basis element of degree `d`.
    pub fn transport(&self, p: &[Vec<Vec<Q>>]) -> Result<AInfinityAlgebra> {
        let top = self.top_degree().max(0) as usize;
        if p.len() != top + 1 {
            return Err(Error::Structural(
                "basis change needs one block per degree".into(),
            ));
        }
        let mut fwd = vec![Vec::new(); self.dim()];
        let mut inv = vec![Vec::new(); self.dim()];
        for (d, blk) in p.iter().enumerate() {
            let elems = self.basis.in_degree(d as i64);
            let n = elems.len();
            if blk.len() != n || blk.iter().any(|r| r.len() != n) {
                return Err(Error::Structural(format!(
                    "basis change block {d} has wrong shape"
                )));
            }
            for (j, &e) in elems.iter().enumerate() {
                fwd[e as usize] = (0..n)
                    .filter(|&i| !blk[i][j].is_zero())
                    .map(|i| (elems[i], blk[i][j].clone()))
                    .collect();
                let mut unit_vec = vec![Q::zero(); n];
                unit_vec[j] = Q::one();
                let col = dense::solve(blk, n, &unit_vec).ok_or_else(|| {
                    Error::Structural(format!("basis change block {d} is singular"))
                })?;
                inv[e as usize] = (0..n)
                    .filter(|&i| !col[i].is_zero())
                    .map(|i| (elems[i], col[i].clone()))
                    .collect();
            }
        }
        if let Some(u) = self.unit {
            if fwd[u as usize] != [(u, Q::one())] {
                return Err(Error::Structural("basis change must fix the unit".into()));
            }
        }
        let mut m = Cochain::zero(-1);
        for n in self.m.arities() {
            let comp = self.m.component(n).expect("listed arity");
            for d_in in 0..=(self.top_degree() * n as i64) {
                for s in self.basis.tensors_of_degree(n, d_in) {
                    let mut expanded: Vec<(Vec<u32>, Q)> = vec![(Vec::new(), Q::one())];
                    for &e in &s {
                        let mut next = Vec::new();
                        for (pre, c) in &expanded {
                            for (f, v) in &inv[e as usize] {
                                let mut t = pre.clone();
                                t.push(*f);
                                next.push((t, c * v));
                            }
                        }
                        expanded = next;
                    }
                    for (t, c) in expanded {
                        for (o, v) in comp.eval(&t) {
                            for (o2, w) in &fwd[*o as usize] {
                                m.add(&s, *o2, &c * v * w);
                            }
                        }
                    }
                }
            }
        }
        AInfinityAlgebra::new(self.space.clone(), m, self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn dual_numbers() -> AInfinityAlgebra {
        AInfinityAlgebra::from_associative(
            vec!["1".into(), "e".into()],
            &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))],
            Some(0),
        )
        .unwrap()
    }

    #[test]
    fn dual_numbers_valid() {
        let a = dual_numbers();
        assert_eq!(a.homology_dims(), vec![2]);
        assert_eq!(a.mul(&[1, 1]), &[]);
    }

    #[test]
    fn dg_sign_convention() {
        // {1, x | y} with d y = x and x, y squaring to zero.
        let space =
            GradedVectorSpace::new(vec![vec!["1".into(), "x".into()], vec!["y".into()]]).unwrap();
        let prod = [
            (0, 0, 0, q(1)),
            (0, 1, 1, q(1)),
            (1, 0, 1, q(1)),
            (0, 2, 2, q(1)),
            (2, 0, 2, q(1)),
        ];
        let a = AInfinityAlgebra::from_dg(space, &[(2, 1, q(1))], &prod, Some(0)).unwrap();
        assert_eq!(a.mul(&[2, 0]), &[(2, q(-1))]);
        assert_eq!(a.homology_dims(), vec![1, 0]);
    }

    #[test]
    fn non_associative_rejected() {
        let r = AInfinityAlgebra::from_associative(
            vec!["a".into(), "b".into()],
            &[(0, 0, 1, q(1)), (1, 0, 0, q(1))],
            None,
        );
        assert!(matches!(r, Err(Error::Invariant(_))));
    }

    #[test]
    fn unit_law_enforced() {
        let r = AInfinityAlgebra::from_associative(
            vec!["1".into(), "e".into()],
            &[(0, 0, 0, q(1)), (0, 1, 1, q(1))],
            Some(0),
        );
        assert!(matches!(r, Err(Error::Structural(_))));
    }

    #[test]
    fn transport_preserves_validity() {
        let a = dual_numbers();
        let p = vec![vec![vec![q(1), q(0)], vec![q(0), q(3)]]];
        let b = a.transport(&p).unwrap();
        assert_eq!(b.mul(&[1, 1]), &[]);
        assert_eq!(b.mul(&[0, 1]), &[(1, q(1))]);
        let p = vec![vec![vec![q(1), q(2)], vec![q(0), q(1)]]];
        // Moves e to e + 2, so the new generator squares to something nonzero.
        let c = a.transport(&p).unwrap();
        assert!(!c.mul(&[1, 1]).is_empty());
    }
}

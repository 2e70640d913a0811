//! Multilinear maps `A^{⊗n} → A` and cochains in `Hom(T^c A[1], A[1])`.
//!
//! A cochain of suspended degree `k` is a finite family of components
//! `f_n : A^{⊗n} → A`, each of A-degree `n - 1 + k`. Signs are Koszul signs
//! computed with suspended degrees `|a| + 1`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{fmt_q, sign, Q};
use crate::tensor::{Chain, GradedBasis, Tensor};

/// Sparse structure constants of a single component `A^{⊗n} → A`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MultiLinearMap {
    arity: usize,
    entries: BTreeMap<Tensor, Vec<(u32, Q)>>,
}

impl MultiLinearMap {
    pub fn new(arity: usize) -> Self {
        MultiLinearMap {
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Adds `c · out` to the value on `input`.
    pub fn add(&mut self, input: &[u32], out: u32, c: Q) {
        assert_eq!(input.len(), self.arity, "input length does not match arity");
        if c.is_zero() {
            return;
        }
        let row = self.entries.entry(input.to_vec()).or_default();
        match row.iter_mut().position(|(o, _)| *o == out) {
            Some(i) => {
                row[i].1 += c;
                if row[i].1.is_zero() {
                    row.remove(i);
                }
            }
            None => {
                row.push((out, c));
                row.sort_by_key(|p| p.0);
            }
        }
        if row.is_empty() {
            self.entries.remove(input);
        }
    }

    pub fn eval(&self, input: &[u32]) -> &[(u32, Q)] {
        self.entries.get(input).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Tensor, &Vec<(u32, Q)>)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }
}

/// Element of `Hom(T^c A[1], A[1])` with a fixed suspended degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    sdeg: i64,
    comps: BTreeMap<usize, MultiLinearMap>,
}

impl Cochain {
    pub fn zero(sdeg: i64) -> Self {
        Cochain {
            sdeg,
            comps: BTreeMap::new(),
        }
    }

    pub fn sdeg(&self) -> i64 {
        self.sdeg
    }

    /// A-degree of the arity-`n` component.
    pub fn component_degree(&self, n: usize) -> i64 {
        n as i64 - 1 + self.sdeg
    }

    pub fn add(&mut self, input: &[u32], out: u32, c: Q) {
        let n = input.len();
        let comp = self
            .comps
            .entry(n)
            .or_insert_with(|| MultiLinearMap::new(n));
        comp.add(input, out, c);
        if comp.is_zero() {
            self.comps.remove(&n);
        }
    }

    pub fn component(&self, n: usize) -> Option<&MultiLinearMap> {
        self.comps.get(&n)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &MultiLinearMap)> {
        self.comps.iter().map(|(&n, m)| (n, m))
    }

    pub fn arities(&self) -> Vec<usize> {
        self.comps.keys().copied().collect()
    }

    pub fn max_arity(&self) -> usize {
        self.comps.keys().next_back().copied().unwrap_or(0)
    }

    pub fn eval(&self, input: &[u32]) -> &[(u32, Q)] {
        self.comps
            .get(&input.len())
            .map(|m| m.eval(input))
            .unwrap_or(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// `(input, output, coefficient)` for every nonzero structure constant, sorted.
    pub fn triples(&self) -> Vec<(Tensor, u32, Q)> {
        let mut v = Vec::new();
        for m in self.comps.values() {
            for (t, outs) in m.entries() {
                for (o, c) in outs {
                    v.push((t.clone(), *o, c.clone()));
                }
            }
        }
        v.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
        v
    }

    /// Keeps only the components whose arity satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Cochain {
        Cochain {
            sdeg: self.sdeg,
            comps: self
                .comps
                .iter()
                .filter(|(n, _)| keep(**n))
                .map(|(n, m)| (*n, m.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Cochain {
        let mut out = Cochain::zero(self.sdeg);
        for (t, o, v) in self.triples() {
            out.add(&t, o, v * c);
        }
        out
    }

    pub fn plus(&self, other: &Cochain) -> Result<Cochain> {
        if self.sdeg != other.sdeg && !self.is_zero() && !other.is_zero() {
            return Err(Error::Degree(format!(
                "cannot add cochains of suspended degrees {} and {}",
                self.sdeg, other.sdeg
            )));
        }
        let mut out = if self.is_zero() {
            Cochain::zero(other.sdeg)
        } else {
            self.clone()
        };
        for (t, o, v) in other.triples() {
            out.add(&t, o, v);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Cochain) -> Result<Cochain> {
        self.plus(&other.scale(&-Q::one()))
    }

    /// Checks `|f_n(a_1..a_n)| = Σ|a_i| + n - 1 + k` on every entry.
    pub fn check_degrees(&self, basis: &GradedBasis) -> Result<()> {
        for (t, o, _) in self.triples() {
            if t.iter().chain([&o]).any(|&e| e as usize >= basis.len()) {
                return Err(Error::Structural(format!(
                    "basis index out of range in {t:?} -> {o}"
                )));
            }
            let want = basis.tensor_degree(&t) + self.component_degree(t.len());
            if basis.degree(o) != want {
                return Err(Error::Degree(format!(
                    "entry {} -> {} has output degree {}, expected {want}",
                    basis.format_tensor(&t),
                    basis.label(o),
                    basis.degree(o)
                )));
            }
        }
        Ok(())
    }

    /// Adds the coderivation `b'_f` applied to `c · (a_1..a_L)` into `out`:
    /// every component is inserted at every slot with sign
    /// `(-1)^{k · Σ_{l<j} (|a_l|+1)}`.
    pub fn coderivation_apply(&self, t: &[u32], c: &Q, basis: &GradedBasis, out: &mut Chain) {
        let len = t.len();
        let mut prefix = 0i64;
        for j in 0..=len {
            let s = sign(self.sdeg * prefix);
            for (&n, m) in &self.comps {
                if j + n > len {
                    continue;
                }
                for (o, v) in m.eval(&t[j..j + n]) {
                    let mut img = Vec::with_capacity(len + 1 - n);
                    img.extend_from_slice(&t[..j]);
                    img.push(*o);
                    img.extend_from_slice(&t[j + n..]);
                    out.add_term(img, &s * v * c);
                }
            }
            if j < len {
                prefix += basis.sdeg(t[j]);
            }
        }
    }

    /// Gerstenhaber circle product `f ∘ g`: `g` inserted into every input slot
    /// of `f`, with sign `(-1)^{|g| · Σ_{l<p}(|a_l|+1)}`.
    pub fn circle(&self, g: &Cochain, basis: &GradedBasis) -> Cochain {
        let mut out = Cochain::zero(self.sdeg + g.sdeg);
        let mut by_output: HashMap<u32, Vec<(&Tensor, &Q)>> = HashMap::new();
        for m in g.comps.values() {
            for (t, outs) in m.entries() {
                for (o, v) in outs {
                    by_output.entry(*o).or_default().push((t, v));
                }
            }
        }
        for m in self.comps.values() {
            for (u, outs) in m.entries() {
                let mut prefix = 0i64;
                for p in 0..u.len() {
                    let s = sign(g.sdeg * prefix);
                    if let Some(inner) = by_output.get(&u[p]) {
                        for (tg, vg) in inner {
                            let mut input = Vec::with_capacity(u.len() + tg.len() - 1);
                            input.extend_from_slice(&u[..p]);
                            input.extend_from_slice(tg);
                            input.extend_from_slice(&u[p + 1..]);
                            for (o, vf) in outs {
                                out.add(&input, *o, &s * vf * *vg);
                            }
                        }
                    }
                    prefix += basis.sdeg(u[p]);
                }
            }
        }
        out
    }

    /// `[x, y] = x∘y - (-1)^{|x||y|} y∘x`.
    pub fn bracket(&self, y: &Cochain, basis: &GradedBasis) -> Cochain {
        let xy = self.circle(y, basis);
        let yx = y.circle(self, basis);
        xy.plus(&yx.scale(&-sign(self.sdeg * y.sdeg)))
            .expect("equal degrees")
    }

    pub fn describe(&self, basis: &GradedBasis) -> String {
        let mut lines = Vec::new();
        for (t, o, c) in self.triples() {
            lines.push(format!(
                "{} -> {} {}",
                basis.format_tensor(&t),
                fmt_q(&c),
                basis.label(o)
            ));
        }
        lines.join("\n")
    }
}

/// Basis of the finite-dimensional space of cochains of suspended degree
/// `sdeg` with arities in `arities`: pairs `(input tensor, output element)`
/// satisfying the degree constraint.
pub fn cochain_basis(
    basis: &GradedBasis,
    sdeg: i64,
    arities: impl IntoIterator<Item = usize>,
) -> Vec<(Tensor, u32)> {
    let top = basis.top_degree();
    let mut out = Vec::new();
    for n in arities {
        let shift = n as i64 - 1 + sdeg;
        for d_in in 0..=(top * n as i64) {
            let d_out = d_in + shift;
            if d_out < 0 || d_out > top {
                continue;
            }
            let outs = basis.in_degree(d_out);
            if outs.is_empty() {
                continue;
            }
            for t in basis.tensors_of_degree(n, d_in) {
                for &o in outs {
                    out.push((t.clone(), o));
                }
            }
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
    out
}

/// Largest arity a cochain of suspended degree `sdeg` can have on a space with
/// top degree `top`: all inputs in degree 0 and output in the top degree.
pub fn max_arity(top: i64, sdeg: i64) -> i64 {
    top + 1 - sdeg
}

/// Random cochain with small integer coefficients on `density` of the basis slots.
pub fn random_cochain<R: Rng>(
    basis: &GradedBasis,
    sdeg: i64,
    arities: impl IntoIterator<Item = usize>,
    density: f64,
    rng: &mut R,
) -> Cochain {
    let mut c = Cochain::zero(sdeg);
    for (t, o) in cochain_basis(basis, sdeg, arities) {
        if rng.gen_bool(density) {
            let v: i64 = rng.gen_range(-2..=2);
            c.add(&t, o, Q::from_integer(v.into()));
        }
    }
    c
}

//! Traces, the pairings of deformation cochains with cyclic cocycles, formal
//! deformations and their obstruction classes.
//!
//! Deformations are order-indexed families `m⁽¹⁾, m⁽²⁾, …` of suspended
//! degree −1 cochains; `m⁽⁰⁾` is the structure of the base algebra. The
//! Maurer–Cartan condition at order `n` is `Σ_{i+j=n} m⁽ⁱ⁾ ∘ m⁽ʲ⁾ = 0`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::AInfinityAlgebra;
use crate::bar::ComplexWindow;
use crate::cochain::Cochain;
use crate::cyclic::operators::rotate;
use crate::cyclic::traces::{closed_graded_traces, is_closed_trace};
use crate::cyclic::CyclicComplexes;
use crate::error::{Error, Result};
use crate::exactlin::{dense, SparseMatrix};
use crate::gerstenhaber::DeformationComplex;
use crate::scalar::{fmt_q, sign, Q};
use crate::tensor::{Chain, GradedBasis, Tensor};

/// A closed graded trace `τ : A → K`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    values: Vec<Q>,
}

impl Trace {
    pub fn new(a: &AInfinityAlgebra, values: Vec<Q>) -> Result<Self> {
        if values.len() != a.dim() {
            return Err(Error::Structural(format!(
                "trace has {} values for dimension {}",
                values.len(),
                a.dim()
            )));
        }
        if !is_closed_trace(a, &values) {
            return Err(Error::Precondition(
                "functional is not a closed graded trace".into(),
            ));
        }
        Ok(Trace { values })
    }

    /// A basis of the closed graded traces of `a`.
    pub fn all(a: &AInfinityAlgebra) -> Vec<Trace> {
        closed_graded_traces(a)
            .into_iter()
            .map(|values| Trace { values })
            .collect()
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn eval(&self, e: u32) -> &Q {
        &self.values[e as usize]
    }

    /// `τ` as a functional on the chains of degree 0.
    pub fn on_chains(&self, cx: &CyclicComplexes) -> Result<Vec<Q>> {
        Ok(cx
            .piece(0)?
            .tensors()
            .iter()
            .map(|t| self.values[t[0] as usize].clone())
            .collect())
    }
}

/// Cap product `i_φ`: on `(a_0, …, a_n)`, every block of consecutive entries
/// (cyclically, containing `a_0`) is fed to some `m_k` after `φ` has been
/// applied to a sub-block lying to the right of `a_0`. Degree `|φ| − 1`.
pub fn cap(phi: &Cochain, a: &AInfinityAlgebra, t: &[u32], c: &Q, out: &mut Chain) {
    let basis = a.basis();
    let n = t.len();
    for r in 0..n {
        let (rs, u) = rotate(basis, t, r);
        // u[r] is a_0; φ consumes u[j..j+p] with j > r.
        let mut prefix: i64 = basis.tensor_sdeg(&u[..=r]);
        for j in r + 1..=n {
            let s = &rs * sign(phi.sdeg() * prefix);
            for (p, f) in phi.components() {
                if j + p > n {
                    continue;
                }
                for (fo, fv) in f.eval(&u[j..j + p]) {
                    let mut inner: Tensor = u[..j].to_vec();
                    inner.push(*fo);
                    inner.extend_from_slice(&u[j + p..]);
                    for (k, mk) in a.m().components() {
                        if k <= j || k > inner.len() {
                            continue;
                        }
                        for (o, v) in mk.eval(&inner[..k]) {
                            let mut img = vec![*o];
                            img.extend_from_slice(&inner[k..]);
                            out.add_term(img, &s * fv * v * c);
                        }
                    }
                }
            }
            if j < n {
                prefix += basis.sdeg(u[j]);
            }
        }
    }
}

/// Matrix of `i_φ : C_q → C_{q + |φ| − 1}`.
pub fn cap_matrix(cx: &CyclicComplexes, phi: &Cochain, q: i64) -> Result<SparseMatrix> {
    let a = cx.algebra();
    cx.op_matrix(q, q + phi.sdeg() - 1, false, |t| {
        let mut out = Chain::new();
        cap(phi, a, t, &Q::one(), &mut out);
        out
    })
}

fn covector_times(v: &[Q], m: &SparseMatrix) -> Vec<Q> {
    (0..m.cols())
        .map(|j| {
            m.column(j)
                .iter()
                .fold(Q::zero(), |acc, (i, x)| acc + &v[*i] * x)
        })
        .collect()
}

/// `φ̃ = τ ∘ i_φ` for a functional `τ` on `C_q`; a functional on
/// `C_{q − |φ| + 1}`. Classically `φ̃(a_0, …) = τ(a_0 φ(a_1, …, a_p), …)`.
pub fn pair_cochain_with_cocycle(
    cx: &CyclicComplexes,
    phi: &Cochain,
    tau: &[Q],
    q: i64,
) -> Result<Vec<Q>> {
    let src = q - phi.sdeg() + 1;
    let m = cap_matrix(cx, phi, src)?;
    if m.rows() != tau.len() {
        return Err(Error::Structural(format!(
            "functional has {} entries, C_{q} has {}",
            tau.len(),
            m.rows()
        )));
    }
    Ok(covector_times(tau, &m))
}

/// `ψ ∈ (Tot_p CC⁺)^*` with `p = 1 − |φ|`: `τ ∘ i_φ` on column 0 and
/// `(−1)^{|φ|} τ ∘ φ` on column 1, zero elsewhere.
///
/// On columns 0 and 1 this satisfies `ψ_φ ∘ D = −(−1)^{|φ|} ψ_{δφ}`, with `|φ|`
/// the suspended degree. On column 2 the
/// defect is `τ ∘ φ ∘ N`, which vanishes when `τ ∘ φ` is cyclically
/// invariant; see [`column_two_defect`].
pub fn pair_with_trace(cx: &CyclicComplexes, phi: &Cochain, tau: &Trace) -> Result<Vec<Q>> {
    let p = 1 - phi.sdeg();
    let layout = cx.tot_layout(p)?;
    let mut psi = vec![Q::zero(); layout.iter().sum()];
    if p < 0 {
        return Ok(psi);
    }
    let col0 = pair_cochain_with_cocycle(cx, phi, &tau.on_chains(cx)?, 0)?;
    psi[..layout[0]].clone_from_slice(&col0);
    if layout.len() > 1 {
        let off = layout[0];
        for (i, t) in cx.piece(p - 1)?.tensors().iter().enumerate() {
            let v = phi
                .eval(t)
                .iter()
                .fold(Q::zero(), |acc, (o, x)| acc + tau.eval(*o) * x);
            psi[off + i] = sign(phi.sdeg()) * v;
        }
    }
    Ok(psi)
}

/// `τ ∘ φ ∘ N` on chains of degree `p − 1` (column 2 of `Tot_{p+1}`); zero
/// exactly when `ψ_φ ∘ D` has no column-2 component.
pub fn column_two_defect(cx: &CyclicComplexes, phi: &Cochain, tau: &Trace) -> Result<Vec<Q>> {
    let p = 1 - phi.sdeg();
    if p < 1 {
        return Ok(Vec::new());
    }
    let col1: Vec<Q> = cx
        .piece(p - 1)?
        .tensors()
        .iter()
        .map(|t| {
            phi.eval(t)
                .iter()
                .fold(Q::zero(), |acc, (o, x)| acc + tau.eval(*o) * x)
        })
        .collect();
    Ok(covector_times(&col1, &*cx.norm(p - 1)?))
}

/// Whether a functional on `Tot_n` is a coboundary `η ∘ D_n`.
pub fn is_tot_coboundary(cx: &CyclicComplexes, psi: &[Q], n: i64) -> Result<bool> {
    let d = cx.tot(n)?;
    if d.cols() != psi.len() {
        return Err(Error::Structural("functional does not match Tot".into()));
    }
    let dt = d.transpose();
    let col: Vec<(usize, Q)> = psi
        .iter()
        .cloned()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect();
    let aug = dt.hstack(&SparseMatrix::from_columns(dt.rows(), vec![col]));
    Ok(aug.rank() == dt.rank())
}

/// `ψ ∘ D_{n+1}` for a functional on `Tot_n`.
pub fn tot_coboundary(cx: &CyclicComplexes, psi: &[Q], n: i64) -> Result<Vec<Q>> {
    Ok(covector_times(psi, &*cx.tot(n + 1)?))
}

/// Inputs on which closedness is tested: degree-0 pairs `(a, b)` with
/// `a ≤ b`, and single degree-1 elements.
fn trace_test_inputs(basis: &GradedBasis) -> Vec<Tensor> {
    let n = basis.len() as u32;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            if basis.degree(a) + basis.degree(b) == 0 {
                out.push(vec![a, b]);
            }
        }
    }
    out.extend(basis.in_degree(1).iter().map(|&y| vec![y]));
    out
}

/// `τ(x_2(a,b)) − (−1)^{|a||b|} τ(x_2(b,a))` on pairs and `τ(x_1(y))` on
/// degree-1 elements, in the order of the test inputs.
fn trace_defect_vector(x: &Cochain, tau: &Trace, basis: &GradedBasis) -> Vec<Q> {
    let ev = |t: &[u32]| {
        x.eval(t)
            .iter()
            .fold(Q::zero(), |acc, (o, v)| acc + tau.eval(*o) * v)
    };
    trace_test_inputs(basis)
        .iter()
        .map(|t| match t[..] {
            [a, b] => ev(&[a, b]) - sign(basis.degree(a) * basis.degree(b)) * ev(&[b, a]),
            _ => ev(t),
        })
        .collect()
}

/// Nonzero trace defects of `x`, keyed by the witness input.
pub fn trace_defects(x: &Cochain, tau: &Trace, basis: &GradedBasis) -> Vec<(Tensor, Q)> {
    trace_test_inputs(basis)
        .into_iter()
        .zip(trace_defect_vector(x, tau, basis))
        .filter(|(_, d)| !d.is_zero())
        .collect()
}

/// Order-indexed formal deformation `m⁽⁰⁾ + t m⁽¹⁾ + ⋯ + t^N m⁽ᴺ⁾`.
#[derive(Clone, Debug)]
pub struct FormalDeformation {
    base: AInfinityAlgebra,
    terms: Vec<Cochain>,
}

impl FormalDeformation {
    /// Checks degrees and the Maurer–Cartan condition through the given order.
    pub fn new(base: AInfinityAlgebra, terms: Vec<Cochain>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if t.sdeg() != -1 {
                return Err(Error::Degree(format!(
                    "term of order {} has suspended degree {}",
                    i + 1,
                    t.sdeg()
                )));
            }
            t.check_degrees(base.basis())?;
        }
        let def = FormalDeformation { base, terms };
        for n in 1..=def.order() {
            let d = def.mc_defect(n);
            if !d.is_zero() {
                return Err(Error::Invariant(format!(
                    "Maurer-Cartan fails at order {n}:\n{}",
                    d.describe(def.base.basis())
                )));
            }
        }
        Ok(def)
    }

    pub fn trivial(base: AInfinityAlgebra) -> Self {
        FormalDeformation {
            base,
            terms: Vec::new(),
        }
    }

    pub fn base(&self) -> &AInfinityAlgebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `m⁽ⁱ⁾`, with `m⁽⁰⁾` the base structure.
    pub fn term(&self, i: usize) -> Option<&Cochain> {
        if i == 0 {
            Some(self.base.m())
        } else {
            self.terms.get(i - 1)
        }
    }

    fn term_or_zero(&self, i: usize) -> Cochain {
        self.term(i).cloned().unwrap_or_else(|| Cochain::zero(-1))
    }

    /// `Σ_{i+j=n} m⁽ⁱ⁾ ∘ m⁽ʲ⁾`, terms beyond the order counted as zero.
    pub fn mc_defect(&self, n: usize) -> Cochain {
        self.sum_of_products(n, 0)
    }

    fn sum_of_products(&self, n: usize, skip_ends: usize) -> Cochain {
        let basis = self.base.basis();
        let mut acc = Cochain::zero(-2);
        for i in skip_ends..=n - skip_ends {
            let p = self
                .term_or_zero(i)
                .circle(&self.term_or_zero(n - i), basis);
            acc = acc.plus(&p).expect("degree -2");
        }
        acc
    }

    /// The order-`n+1` obstruction `−Σ_{i+j=n+1, i,j≥1} m⁽ⁱ⁾ ∘ m⁽ʲ⁾`, which
    /// `δ m⁽ⁿ⁺¹⁾` must equal.
    pub fn obstruction_cochain(&self) -> Cochain {
        let n = self.order() + 1;
        self.sum_of_products(n, 1).scale(&-Q::one())
    }

    /// Appends `m⁽ⁿ⁺¹⁾` after checking Maurer–Cartan at the new order.
    pub fn extend(&self, next: Cochain) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.push(next);
        FormalDeformation::new(self.base.clone(), terms)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedCheck {
    pub closed: bool,
    /// Order and input tuple of the first failure.
    pub failure: Option<(usize, Vec<String>)>,
}

/// Whether `τ` stays a trace for every `m⁽ⁱ⁾`, `i ≤ order`.
pub fn is_closed(def: &FormalDeformation, tau: &Trace) -> ClosedCheck {
    let basis = def.base().basis();
    for i in 0..=def.order() {
        if let Some((t, _)) = trace_defects(def.term(i).expect("in range"), tau, basis)
            .into_iter()
            .next()
        {
            return ClosedCheck {
                closed: false,
                failure: Some((i, t.iter().map(|e| basis.label(*e).to_string()).collect())),
            };
        }
    }
    ClosedCheck {
        closed: true,
        failure: None,
    }
}

/// Result of trying to extend a deformation by one order.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    /// Order being solved for.
    pub order: usize,
    pub cochain: Cochain,
    /// Class in `H^3(A,A)` vanishes.
    pub hochschild_vanishes: bool,
    /// `ψ` of the obstruction is a cocycle in the dual of `Tot CC⁺`.
    pub cyclic_cocycle: Option<bool>,
    /// Class of `ψ` in `HC^3` vanishes.
    pub cyclic_vanishes: Option<bool>,
    /// A solution `m⁽ⁿ⁺¹⁾` (closed when a trace is given).
    pub witness: Option<Cochain>,
}

impl ObstructionReport {
    pub fn normalization() -> &'static str {
        "cyclic class of psi(tau, obstruction) in the dual of Tot CC+, psi = (tau . i_phi, (-1)^|phi| tau . phi)"
    }
}

/// Solves `δx = rhs` for `x ∈ C^k` subject to the linear side conditions
/// `extra(x) = 0`.
fn solve_with_constraints(
    dc: &DeformationComplex,
    k: i64,
    rhs: &Cochain,
    extra: impl Fn(&Cochain) -> Vec<Q>,
) -> Result<Option<Cochain>> {
    let basis = dc.basis_at(k)?;
    let delta = dc.delta_matrix(k)?;
    let mut rows = delta.to_dense();
    let mut b = dc.coords(k - 1, rhs)?;
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .map(|(t, o)| {
            let mut e = Cochain::zero(k);
            e.add(t, *o, Q::one());
            extra(&e)
        })
        .collect();
    for r in 0..cols.first().map_or(0, Vec::len) {
        rows.push(cols.iter().map(|c| c[r].clone()).collect());
        b.push(Q::zero());
    }
    dense::solve(&rows, basis.len(), &b)
        .map(|x| dc.cochain(k, &x))
        .transpose()
}

/// Obstruction to extending `def` by one order, in `H^3(A,A)` and (with a
/// trace) in `HC^3`, together with a witness when one exists.
pub fn obstruction_class(
    def: &FormalDeformation,
    tau: Option<&Trace>,
    window: ComplexWindow,
) -> Result<ObstructionReport> {
    let a = def.base();
    if let Some(tau) = tau {
        let check = is_closed(def, tau);
        if !check.closed {
            return Err(Error::Precondition(format!(
                "deformation is not closed: {:?}",
                check.failure
            )));
        }
    }
    let rhs = def.obstruction_cochain();
    let dc = DeformationComplex::new(a, window)?;
    let hochschild_vanishes = dc.is_coboundary(&rhs)?;
    let (cyclic_cocycle, cyclic_vanishes) = match tau {
        Some(tau) => {
            let cx = CyclicComplexes::new(a, window)?;
            let psi = pair_with_trace(&cx, &rhs, tau)?;
            let cocycle = tot_coboundary(&cx, &psi, 3)?.iter().all(Zero::is_zero);
            (Some(cocycle), Some(is_tot_coboundary(&cx, &psi, 3)?))
        }
        None => (None, None),
    };
    let witness = solve_with_constraints(&dc, -1, &rhs, |x| {
        tau.map_or_else(Vec::new, |t| trace_defect_vector(x, t, a.basis()))
    })?;
    Ok(ObstructionReport {
        order: def.order() + 1,
        cochain: rhs,
        hochschild_vanishes,
        cyclic_cocycle,
        cyclic_vanishes,
        witness,
    })
}

/// Obstruction to extending an equivalence between two deformations that
/// agree below order `n` and differ at order `n` by `d = m'⁽ⁿ⁾ − m⁽ⁿ⁾`.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub order: usize,
    pub difference: Cochain,
    /// Class of `d` in `H^2(A,A)` vanishes.
    pub hochschild_vanishes: bool,
    /// Class of `ψ(d)` in `HC^2` vanishes.
    pub cyclic_vanishes: Option<bool>,
    /// `g` of suspended degree 0 with `δg = d` (and `τ ∘ g = 0` with a trace).
    pub witness: Option<Cochain>,
}

pub fn equivalence_obstruction(
    first: &FormalDeformation,
    second: &FormalDeformation,
    tau: Option<&Trace>,
    window: ComplexWindow,
) -> Result<EquivalenceReport> {
    let a = first.base();
    if a.m() != second.base().m() {
        return Err(Error::Precondition(
            "deformations have different bases".into(),
        ));
    }
    let top = first.order().min(second.order());
    let n = (1..=top)
        .find(|&i| first.term(i) != second.term(i))
        .ok_or_else(|| {
            Error::Precondition("deformations agree through their common order".into())
        })?;
    let d = second.term_or_zero(n).minus(&first.term_or_zero(n))?;
    let dc = DeformationComplex::new(a, window)?;
    if !deformation_differential_is_zero(&d, a) {
        return Err(Error::Precondition(format!(
            "difference at order {n} is not a cocycle"
        )));
    }
    let hochschild_vanishes = dc.is_coboundary(&d)?;
    let cyclic_vanishes = match tau {
        Some(tau) => {
            let cx = CyclicComplexes::new(a, window)?;
            Some(is_tot_coboundary(&cx, &pair_with_trace(&cx, &d, tau)?, 2)?)
        }
        None => None,
    };
    let witness = solve_with_constraints(&dc, 0, &d, |g| {
        tau.map_or_else(Vec::new, |t| {
            a.basis()
                .in_degree(0)
                .iter()
                .map(|&e| {
                    g.eval(&[e])
                        .iter()
                        .fold(Q::zero(), |acc, (o, v)| acc + t.eval(*o) * v)
                })
                .collect()
        })
    })?;
    Ok(EquivalenceReport {
        order: n,
        difference: d,
        hochschild_vanishes,
        cyclic_vanishes,
        witness,
    })
}

fn deformation_differential_is_zero(x: &Cochain, a: &AInfinityAlgebra) -> bool {
    crate::gerstenhaber::deformation_differential(x, a).is_zero()
}

pub fn format_witness(x: &Cochain, basis: &GradedBasis) -> Vec<String> {
    x.triples()
        .into_iter()
        .map(|(t, o, c)| {
            format!(
                "{} -> {} * {}",
                basis.format_tensor(&t),
                fmt_q(&c),
                basis.label(o)
            )
        })
        .collect()
}

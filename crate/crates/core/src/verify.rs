//! Derivations and Lie derivatives, homology algebras, A∞-ideals and
//! quotients, strict morphisms and equivalences, and the reports that check
//! homotopy invariance and the comparison of HP with that of H_0 on concrete
//! algebras.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::AInfinityAlgebra;
use crate::bar::{morphism_apply, ComplexWindow};
use crate::classical::ClassicalAlgebra;
use crate::cochain::Cochain;
use crate::cyclic::homology::PeriodicReport;
use crate::cyclic::CyclicComplexes;
use crate::error::{Error, Result};
use crate::exactlin::complex::induced_rank;
use crate::exactlin::dense::{self, Echelon};
use crate::exactlin::{GradedVectorSpace, SparseMatrix};
use crate::gerstenhaber::deformation_differential;
use crate::scalar::{fmt_q, Q};
use crate::tensor::{operator_matrix, Chain, Tensor};

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        expected: impl ToString,
        observed: impl ToString,
        status: Status,
    ) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            status,
        }
    }

    pub fn equal<T: PartialEq + std::fmt::Debug>(
        name: impl Into<String>,
        expected: T,
        observed: T,
    ) -> Self {
        let status = Status::from_bool(expected == observed);
        Check::new(
            name,
            format!("{expected:?}"),
            format!("{observed:?}"),
            status,
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowInfo {
    pub max_weight: usize,
    pub max_degree: i64,
    pub reliable_bound: i64,
}

impl From<ComplexWindow> for WindowInfo {
    fn from(w: ComplexWindow) -> Self {
        WindowInfo {
            max_weight: w.max_weight,
            max_degree: w.max_degree,
            reliable_bound: w.reliable_bound(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub claim: String,
    pub window: WindowInfo,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl VerifyReport {
    pub fn new(claim: impl Into<String>, window: ComplexWindow) -> Self {
        VerifyReport {
            claim: claim.into(),
            window: window.into(),
            checks: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.status = self.status.combine(c.status);
        self.checks.push(c);
    }

    pub fn extend(&mut self, prefix: &str, other: VerifyReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.push(c);
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("{} [{:?}]\n", self.claim, self.status);
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<44} expected {:<14} observed {:<14} {:?}\n",
                c.name, c.expected, c.observed, c.status
            ));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Derivations

#[derive(Clone, Debug, Serialize)]
pub struct DerivationCheck {
    pub holds: bool,
    /// First input tuple (labels) on which `[m, D]` is nonzero.
    pub witness: Option<Vec<String>>,
}

/// Whether `[m, D] = 0`.
pub fn is_derivation(d: &Cochain, a: &AInfinityAlgebra) -> DerivationCheck {
    let defect = deformation_differential(d, a);
    let witness = defect
        .triples()
        .into_iter()
        .next()
        .map(|(t, _, _)| t.iter().map(|e| a.basis().label(*e).to_string()).collect());
    DerivationCheck {
        holds: witness.is_none(),
        witness,
    }
}

/// A cochain `D` with `[m, D] = 0`; its components satisfy
/// `|D_n| = n − 1 + |D|`.
#[derive(Clone, Debug)]
pub struct Derivation {
    cochain: Cochain,
}

impl Derivation {
    pub fn new(a: &AInfinityAlgebra, d: Cochain) -> Result<Self> {
        d.check_degrees(a.basis())?;
        let check = is_derivation(&d, a);
        if !check.holds {
            return Err(Error::Precondition(format!(
                "[m, D] is nonzero on {:?}",
                check.witness
            )));
        }
        Ok(Derivation { cochain: d })
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    pub fn degree(&self) -> i64 {
        self.cochain.sdeg()
    }
}

/// Induced map of `L_D` on `HP` of one parity: the ladder report and, when
/// it stabilized, the rank of `L_D ∘ S^L` on homology.
#[derive(Clone, Debug, Serialize)]
pub struct LieDerivativeReport {
    pub parity: i64,
    pub ladder: PeriodicReport,
    pub rank: Option<usize>,
}

pub fn lie_derivative_on_hp(
    cx: &CyclicComplexes,
    d: &Derivation,
    parity: i64,
) -> Result<LieDerivativeReport> {
    let ladder = cx.hp(parity)?;
    let rank = if ladder.stabilized() {
        let base = ladder.levels[0];
        let l = cx.lie_derivative(d.cochain(), base)?;
        Some(cx.hp_map_rank(&ladder, &l, cx, d.degree())?)
    } else {
        None
    };
    Ok(LieDerivativeReport {
        parity,
        ladder,
        rank,
    })
}

/// Rank of `L_D ∘ S : HC_n → HC_{n−2+|D|}`.
pub fn lie_derivative_after_s_rank(cx: &CyclicComplexes, d: &Derivation, n: i64) -> Result<usize> {
    let s = cx.s_map(n)?;
    let l = cx.lie_derivative(d.cochain(), n - 2)?;
    induced_rank(&*cx.tot(n)?, &l.mul(&s), &*cx.tot(n - 1 + d.degree())?)
}

/// `L_D` vanishes on stabilized `HP` of both parities and `L_D ∘ S`
/// vanishes on `HC_n` for `2 ≤ n ≤` the reliable bound.
pub fn verify_lie_derivative(
    a: &AInfinityAlgebra,
    d: &Derivation,
    window: ComplexWindow,
) -> Result<VerifyReport> {
    let cx = CyclicComplexes::new(a, window)?;
    let mut report = VerifyReport::new("L_D vanishes on HP and L_D∘S vanishes on HC", window);
    for parity in [0, 1] {
        let r = lie_derivative_on_hp(&cx, d, parity)?;
        match r.rank {
            Some(rank) => report.push(Check::equal(format!("rank L_D on HP{parity}"), 0, rank)),
            None => report.push(Check::new(
                format!("rank L_D on HP{parity}"),
                0,
                "not stabilized",
                Status::Inconclusive,
            )),
        }
    }
    let top = (window.reliable_bound() - 1 - d.degree().max(0)).min(window.reliable_bound());
    for n in 2..=top {
        report.push(Check::equal(
            format!("rank L_D∘S on HC{n}"),
            0,
            lie_derivative_after_s_rank(&cx, d, n)?,
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Multilinear evaluation on vectors

/// `m_n(v_1, …, v_n)` for dense vectors over the flat basis.
fn eval_on_vectors(m: &Cochain, args: &[&[Q]], dim: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    let Some(comp) = m.component(args.len()) else {
        return out;
    };
    for (t, outs) in comp.entries() {
        let mut c = Q::one();
        for (i, e) in t.iter().enumerate() {
            let x = &args[i][*e as usize];
            if x.is_zero() {
                c = Q::zero();
                break;
            }
            c *= x;
        }
        if c.is_zero() {
            continue;
        }
        for (o, v) in outs {
            out[*o as usize] += &c * v;
        }
    }
    out
}

fn unit_vector(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Coordinates of `v` in the basis `cols` of a subspace containing it.
fn coordinates(cols: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let rows: Vec<Vec<Q>> = (0..v.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    dense::solve(&rows, cols.len(), v)
}

// ---------------------------------------------------------------------------
// Homology algebra

/// `H_•(A, m_1)` with the product induced by `m_2`, together with the chosen
/// cycle representatives (dense vectors over the basis of `A`).
#[derive(Clone, Debug)]
pub struct HomologyAlgebra {
    pub algebra: AInfinityAlgebra,
    pub representatives: Vec<Vec<Q>>,
}

/// Representatives: kernel vectors of `m_1` in each degree, taken in order and
/// kept when independent of the boundaries and of earlier choices.
pub fn homology_algebra(a: &AInfinityAlgebra) -> Result<HomologyAlgebra> {
    let n = a.dim();
    let basis = a.basis();
    let top = a.top_degree().max(0);
    let mut labels: Vec<Vec<String>> = Vec::new();
    let mut reps: Vec<Vec<Q>> = Vec::new();
    let mut boundaries: Vec<Vec<Vec<Q>>> = Vec::new();
    for d in 0..=top {
        let idx = basis.in_degree(d);
        let mut ech = Echelon::new(n);
        let mut bd = Vec::new();
        for &e in basis.in_degree(d + 1) {
            let v = eval_on_vectors(a.m(), &[&unit_vector(n, e as usize)], n);
            if ech.insert(&v) {
                bd.push(v);
            }
        }
        let blk = a.m1_block(d).to_dense();
        let kernel = dense::kernel(&blk, idx.len());
        let mut row = Vec::new();
        for k in kernel {
            let mut v = vec![Q::zero(); n];
            for (j, &e) in idx.iter().enumerate() {
                v[e as usize] = k[j].clone();
            }
            if ech.insert(&v) {
                let lead = idx
                    .iter()
                    .zip(&k)
                    .find(|(_, x)| !x.is_zero())
                    .map(|(e, _)| *e)
                    .expect("nonzero");
                row.push(format!("[{}]", basis.label(lead)));
                reps.push(v);
            }
        }
        labels.push(row);
        boundaries.push(bd);
    }
    // Unit first among degree-0 classes when it is a cycle that survives.
    let unit_class = a.unit().and_then(|u| {
        let uv = unit_vector(n, u as usize);
        let nz = eval_on_vectors(a.m(), &[&uv], n)
            .iter()
            .any(|x| !x.is_zero());
        (!nz).then_some(uv)
    });
    if let Some(uv) = &unit_class {
        let deg0 = labels[0].len();
        let mut cols = boundaries[0].clone();
        cols.extend(reps[..deg0].iter().cloned());
        let mut ech = Echelon::new(n);
        for b in &boundaries[0] {
            ech.insert(b);
        }
        if ech.insert(uv) {
            // Swap in the unit for the first representative it can replace.
            let mut chosen = vec![uv.clone()];
            let mut chosen_labels = vec![format!("[{}]", basis.label(a.unit().expect("unit")))];
            for (r, l) in reps[..deg0].iter().zip(&labels[0]) {
                if ech.insert(r) {
                    chosen.push(r.clone());
                    chosen_labels.push(l.clone());
                }
            }
            reps.splice(..deg0, chosen);
            labels[0] = chosen_labels;
        }
    }
    let space = GradedVectorSpace::new(labels.clone())?;
    let offsets: Vec<usize> = labels
        .iter()
        .scan(0, |acc, r| {
            let o = *acc;
            *acc += r.len();
            Some(o)
        })
        .collect();
    let mut m = Cochain::zero(-1);
    let total = reps.len();
    for (i, ri) in reps.iter().enumerate() {
        for (j, rj) in reps.iter().enumerate() {
            let prod = eval_on_vectors(a.m(), &[ri, rj], n);
            if prod.iter().all(Zero::is_zero) {
                continue;
            }
            let d = space_degree(&labels, i) + space_degree(&labels, j);
            let range = offsets
                .get(d as usize)
                .map(|o| *o..*o + labels[d as usize].len());
            let Some(range) = range else {
                return Err(Error::Invariant(
                    "product of classes leaves the degree range".into(),
                ));
            };
            let mut cols: Vec<Vec<Q>> = reps[range.clone()].to_vec();
            cols.extend(boundaries[d as usize].iter().cloned());
            let c = coordinates(&cols, &prod)
                .ok_or_else(|| Error::Invariant("product of cycles is not a cycle".into()))?;
            for (k, x) in c.iter().take(range.len()).enumerate() {
                if !x.is_zero() {
                    m.add(&[i as u32, j as u32], (range.start + k) as u32, x.clone());
                }
            }
        }
    }
    let _ = total;
    let unit = unit_class.is_some().then_some(0);
    let algebra = AInfinityAlgebra::new(space, m, unit)?;
    Ok(HomologyAlgebra {
        algebra,
        representatives: reps,
    })
}

fn space_degree(labels: &[Vec<String>], flat: usize) -> i64 {
    let mut acc = 0;
    for (d, r) in labels.iter().enumerate() {
        if flat < acc + r.len() {
            return d as i64;
        }
        acc += r.len();
    }
    unreachable!("flat index in range")
}

/// `H_0(A, m_1)` as an ordinary algebra.
pub fn h0(a: &AInfinityAlgebra) -> Result<AInfinityAlgebra> {
    let h = homology_algebra(a)?;
    let labels = h.algebra.space().labels_in(0).to_vec();
    let k = labels.len() as u32;
    let mut m = Cochain::zero(-1);
    for (t, o, c) in h.algebra.m().triples() {
        if t.iter().all(|e| *e < k) {
            m.add(&t, o, c);
        }
    }
    AInfinityAlgebra::new(GradedVectorSpace::new(vec![labels])?, m, h.algebra.unit())
}

// ---------------------------------------------------------------------------
// Strict morphisms

/// Degree-0 map `f : A → B` with `m_n(f a_1, …, f a_n) = f(m_n(a_1, …, a_n))`,
/// stored as an arity-1 cochain from the basis of `A` to that of `B`.
#[derive(Clone, Debug)]
pub struct StrictMorphism {
    source: AInfinityAlgebra,
    target: AInfinityAlgebra,
    map: Cochain,
}

impl StrictMorphism {
    pub fn new(source: AInfinityAlgebra, target: AInfinityAlgebra, map: Cochain) -> Result<Self> {
        if map.arities().iter().any(|&n| n != 1) || (map.sdeg() != 0 && !map.is_zero()) {
            return Err(Error::Structural(
                "a strict morphism is a single degree-0 linear map".into(),
            ));
        }
        for (t, o, _) in map.triples() {
            if source.basis().degree(t[0]) != target.basis().degree(o) {
                return Err(Error::Degree(format!(
                    "{} changes degree",
                    source.basis().label(t[0])
                )));
            }
        }
        let f = StrictMorphism {
            source,
            target,
            map,
        };
        if let Some(w) = f.strictness_witness() {
            return Err(Error::Invariant(format!("not strict on {w}")));
        }
        Ok(f)
    }

    pub fn identity(a: &AInfinityAlgebra) -> Self {
        let mut map = Cochain::zero(0);
        for e in 0..a.dim() as u32 {
            map.add(&[e], e, Q::one());
        }
        StrictMorphism {
            source: a.clone(),
            target: a.clone(),
            map,
        }
    }

    pub fn source(&self) -> &AInfinityAlgebra {
        &self.source
    }

    pub fn target(&self) -> &AInfinityAlgebra {
        &self.target
    }

    pub fn map(&self) -> &Cochain {
        &self.map
    }

    fn image(&self, e: u32) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.target.dim()];
        for (o, c) in self.map.eval(&[e]) {
            v[*o as usize] += c;
        }
        v
    }

    fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.target.dim()];
        for (e, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, c) in self.map.eval(&[e as u32]) {
                out[*o as usize] += x * c;
            }
        }
        out
    }

    fn strictness_witness(&self) -> Option<String> {
        let a = &self.source;
        let basis = a.basis();
        let dim = a.dim();
        let arities: Vec<usize> = a
            .m()
            .arities()
            .into_iter()
            .chain(self.target.m().arities())
            .collect();
        let max = arities.iter().copied().max().unwrap_or(0);
        for n in 1..=max {
            for t in tuples(dim as u32, n) {
                if basis.tensor_degree(&t) + n as i64 - 2
                    > a.top_degree().max(self.target.top_degree())
                {
                    continue;
                }
                let lhs_args: Vec<Vec<Q>> = t.iter().map(|e| self.image(*e)).collect();
                let refs: Vec<&[Q]> = lhs_args.iter().map(Vec::as_slice).collect();
                let lhs = eval_on_vectors(self.target.m(), &refs, self.target.dim());
                let mut src = vec![Q::zero(); dim];
                for (o, c) in a.mul(&t) {
                    src[*o as usize] += c;
                }
                if lhs != self.apply(&src) {
                    return Some(basis.format_tensor(&t));
                }
            }
        }
        None
    }

    /// `f^{⊗}` on Hochschild chains of degree `q`.
    pub fn chain_matrix(
        &self,
        src: &CyclicComplexes,
        tgt: &CyclicComplexes,
        q: i64,
    ) -> Result<SparseMatrix> {
        let (s, t) = (src.piece(q)?, tgt.piece(q)?);
        Ok(operator_matrix(s, t, |x| {
            let mut out = Chain::new();
            morphism_apply(&self.map, x, &Q::one(), &mut out);
            out
        }))
    }

    /// Column-wise `f^{⊗}` on `Tot_n CC⁺`.
    pub fn tot_matrix(
        &self,
        src: &CyclicComplexes,
        tgt: &CyclicComplexes,
        n: i64,
    ) -> Result<SparseMatrix> {
        src.tot_columnwise(tgt, n, 0, |_, q| self.chain_matrix(src, tgt, q))
    }

    /// Rank of the induced map `H_d(A, m_1) → H_d(B, m_1)`.
    pub fn homology_rank(&self, d: i64) -> Result<usize> {
        let si = self.source.basis().in_degree(d);
        let ti = self.target.basis().in_degree(d);
        let trip = si.iter().enumerate().flat_map(|(c, e)| {
            self.map.eval(&[*e]).iter().map(move |(o, v)| {
                (
                    ti.iter().position(|x| x == o).expect("degree kept"),
                    c,
                    v.clone(),
                )
            })
        });
        let f = SparseMatrix::from_triplets(ti.len(), si.len(), trip.collect::<Vec<_>>());
        induced_rank(&self.source.m1_block(d), &f, &self.target.m1_block(d + 1))
    }
}

fn tuples(dim: u32, n: usize) -> Vec<Tensor> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Tensor| {
                (0..dim).map(move |e| {
                    let mut u = t.clone();
                    u.push(e);
                    u
                })
            })
            .collect();
    }
    out
}

/// Whether `f` induces an isomorphism on `H_•(−, m_1)`.
pub fn is_equivalence(f: &StrictMorphism) -> Result<bool> {
    let hs = f.source.homology_dims();
    let ht = f.target.homology_dims();
    let top = hs.len().max(ht.len());
    for d in 0..top {
        let (a, b) = (
            hs.get(d).copied().unwrap_or(0),
            ht.get(d).copied().unwrap_or(0),
        );
        if a != b || f.homology_rank(d as i64)? != a {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Ideals and quotients

/// Graded subspace absorbed by every `m_n`, stored as an echelon basis over
/// the flat basis of `A`.
#[derive(Clone, Debug)]
pub struct AInfinityIdeal {
    vectors: Vec<Vec<Q>>,
}

impl AInfinityIdeal {
    /// Spanning vectors must each be homogeneous.
    pub fn new(a: &AInfinityAlgebra, spanning: &[Vec<Q>]) -> Result<Self> {
        let basis = a.basis();
        let mut ech = Echelon::new(a.dim());
        for v in spanning {
            if v.len() != a.dim() {
                return Err(Error::Structural(
                    "ideal vector has the wrong length".into(),
                ));
            }
            let degs: std::collections::BTreeSet<i64> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, _)| basis.degree(i as u32))
                .collect();
            if degs.len() > 1 {
                return Err(Error::Degree("ideal generators must be homogeneous".into()));
            }
            ech.insert(v);
        }
        let ideal = AInfinityIdeal {
            vectors: ech.basis().cloned().collect(),
        };
        if let Some(w) = ideal.absorption_witness(a, &ech) {
            return Err(Error::Precondition(format!("not an A∞-ideal: {w}")));
        }
        Ok(ideal)
    }

    /// Span of the given basis elements.
    pub fn spanned_by(a: &AInfinityAlgebra, elements: &[u32]) -> Result<Self> {
        let vs: Vec<Vec<Q>> = elements
            .iter()
            .map(|e| unit_vector(a.dim(), *e as usize))
            .collect();
        Self::new(a, &vs)
    }

    /// `⊕_{i ≥ 1} A_i`.
    pub fn positive_part(a: &AInfinityAlgebra) -> Result<Self> {
        let els: Vec<u32> = (0..a.dim() as u32)
            .filter(|e| a.basis().degree(*e) > 0)
            .collect();
        Self::spanned_by(a, &els)
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim_in_degree(&self, a: &AInfinityAlgebra, d: i64) -> usize {
        self.vectors
            .iter()
            .filter(|v| degree_of(a, v) == Some(d))
            .count()
    }

    fn absorption_witness(&self, a: &AInfinityAlgebra, ech: &Echelon) -> Option<String> {
        let dim = a.dim();
        for (n, _) in a.m().components() {
            for pos in 0..n {
                for v in &self.vectors {
                    for rest in tuples(dim as u32, n - 1) {
                        let others: Vec<Vec<Q>> =
                            rest.iter().map(|e| unit_vector(dim, *e as usize)).collect();
                        let mut args: Vec<&[Q]> = others.iter().map(Vec::as_slice).collect();
                        args.insert(pos, v);
                        let img = eval_on_vectors(a.m(), &args, dim);
                        if !ech.contains(&img) {
                            return Some(format!(
                                "m_{n} with an ideal element in slot {}",
                                pos + 1
                            ));
                        }
                    }
                }
            }
        }
        None
    }
}

fn degree_of(a: &AInfinityAlgebra, v: &[Q]) -> Option<i64> {
    v.iter()
        .position(|x| !x.is_zero())
        .map(|i| a.basis().degree(i as u32))
}

/// `A/I` with the projection. The complement basis starts with the unit
/// (when it survives) and continues with basis elements in order.
pub fn quotient(
    a: &AInfinityAlgebra,
    ideal: &AInfinityIdeal,
) -> Result<(AInfinityAlgebra, StrictMorphism)> {
    let n = a.dim();
    let basis = a.basis();
    let mut ech = Echelon::new(n);
    for v in ideal.vectors() {
        ech.insert(v);
    }
    let mut order: Vec<u32> = Vec::new();
    if let Some(u) = a.unit() {
        order.push(u);
    }
    order.extend((0..n as u32).filter(|e| Some(*e) != a.unit()));
    let top = a.top_degree().max(0);
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); top as usize + 1];
    let mut chosen: Vec<Vec<u32>> = vec![Vec::new(); top as usize + 1];
    for e in order {
        if ech.insert(&unit_vector(n, e as usize)) {
            let d = basis.degree(e) as usize;
            labels[d].push(basis.label(e).to_string());
            chosen[d].push(e);
        }
    }
    // Flat indices of the quotient follow degree order, then choice order.
    let flat: Vec<u32> = chosen.iter().flatten().copied().collect();
    let mut cols_by_degree: Vec<Vec<Vec<Q>>> = Vec::new();
    for (d, row) in chosen.iter().enumerate() {
        let mut cols: Vec<Vec<Q>> = row.iter().map(|e| unit_vector(n, *e as usize)).collect();
        cols.extend(
            ideal
                .vectors()
                .iter()
                .filter(|v| degree_of(a, v) == Some(d as i64))
                .cloned(),
        );
        cols_by_degree.push(cols);
    }
    let offsets: Vec<usize> = chosen
        .iter()
        .scan(0, |acc, r| {
            let o = *acc;
            *acc += r.len();
            Some(o)
        })
        .collect();
    // Projection of a homogeneous vector of degree d onto quotient coordinates.
    let project = |v: &[Q], d: usize| -> Vec<(u32, Q)> {
        let c = coordinates(&cols_by_degree[d], v).expect("complement spans");
        c.into_iter()
            .take(chosen[d].len())
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| ((offsets[d] + k) as u32, x))
            .collect()
    };
    let mut m = Cochain::zero(-1);
    for (arity, comp) in a.m().components() {
        let _ = arity;
        for (t, outs) in comp.entries() {
            if !t.iter().all(|e| flat.contains(e)) {
                continue;
            }
            let qt: Vec<u32> = t
                .iter()
                .map(|e| flat.iter().position(|x| x == e).expect("chosen") as u32)
                .collect();
            let mut v = vec![Q::zero(); n];
            for (o, c) in outs {
                v[*o as usize] += c;
            }
            let d = basis.degree(outs[0].0) as usize;
            for (o, c) in project(&v, d) {
                m.add(&qt, o, c);
            }
        }
    }
    let unit = a.unit().filter(|u| flat.contains(u)).map(|_| 0);
    let space = GradedVectorSpace::new(labels)?;
    let q = AInfinityAlgebra::new(space, m, unit)?;
    let mut map = Cochain::zero(0);
    for e in 0..n as u32 {
        let d = basis.degree(e) as usize;
        for (o, c) in project(&unit_vector(n, e as usize), d) {
            map.add(&[e], o, c);
        }
    }
    let f = StrictMorphism::new(a.clone(), q.clone(), map)?;
    Ok((q, f))
}

/// `J = C ⊕ m_1(C)` for the complement `C ⊆ A_1` of `ker m_1` spanned by basis
/// elements (chosen in order); an acyclic ideal when it absorbs `m_n`.
pub fn degree_one_contractible_ideal(a: &AInfinityAlgebra) -> Result<AInfinityIdeal> {
    let n = a.dim();
    let mut images = Echelon::new(n);
    let mut gens = Vec::new();
    for &y in a.basis().in_degree(1) {
        let img = eval_on_vectors(a.m(), &[&unit_vector(n, y as usize)], n);
        if images.insert(&img) {
            gens.push(unit_vector(n, y as usize));
            gens.push(img);
        }
    }
    AInfinityIdeal::new(a, &gens)
}

/// `Im(m_1 : A_1 → A_0)`, always an ideal. Quotienting by it alone kills
/// `m_1` on `A_1`, so it is an equivalence only when that map is injective.
pub fn boundary_ideal(a: &AInfinityAlgebra) -> Result<AInfinityIdeal> {
    let n = a.dim();
    let gens: Vec<Vec<Q>> = a
        .basis()
        .in_degree(1)
        .iter()
        .map(|y| eval_on_vectors(a.m(), &[&unit_vector(n, *y as usize)], n))
        .collect();
    AInfinityIdeal::new(a, &gens)
}

// ---------------------------------------------------------------------------
// Invariance of HH, HC and HP

fn hp_check(
    report: &mut VerifyReport,
    label: &str,
    cs: &CyclicComplexes,
    ct: &CyclicComplexes,
    f: &StrictMorphism,
) -> Result<()> {
    for parity in [0, 1] {
        let rs = cs.hp(parity)?;
        let rt = ct.hp(parity)?;
        let name = format!("{label}HP{parity}");
        match (rs.dim, rt.dim) {
            (Some(a), Some(b)) => {
                let phi = f.tot_matrix(cs, ct, rs.levels[0])?;
                let rank = cs.hp_map_rank(&rs, &phi, ct, 0)?;
                report.push(Check::equal(format!("{name} dims"), a, b));
                report.push(Check::equal(format!("{name} induced rank"), a, rank));
            }
            _ => report.push(Check::new(
                format!("{name} dims"),
                "stabilized",
                "not stabilized",
                Status::Inconclusive,
            )),
        }
    }
    Ok(())
}

/// An equivalence induces isomorphisms on `HH`, `HC` (reliable degrees) and
/// stabilized `HP`.
pub fn verify_equivalence_invariance(
    f: &StrictMorphism,
    window: ComplexWindow,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "an equivalence induces isomorphisms on HH, HC and HP",
        window,
    );
    report.push(Check::equal(
        "equivalence on H(m1)",
        true,
        is_equivalence(f)?,
    ));
    let cs = CyclicComplexes::new(f.source(), window)?;
    let ct = CyclicComplexes::new(f.target(), window)?;
    for n in 0..=window.reliable_bound() {
        let (a, b) = (cs.hh_dim(n)?, ct.hh_dim(n)?);
        let rank = induced_rank(&*cs.b(n)?, &f.chain_matrix(&cs, &ct, n)?, &*ct.b(n + 1)?)?;
        report.push(Check::equal(format!("HH{n} dims"), a, b));
        report.push(Check::equal(format!("HH{n} induced rank"), a, rank));
    }
    for n in 0..=window.reliable_bound() {
        let (a, b) = (cs.hc_dim(n)?, ct.hc_dim(n)?);
        let rank = induced_rank(&*cs.tot(n)?, &f.tot_matrix(&cs, &ct, n)?, &*ct.tot(n + 1)?)?;
        report.push(Check::equal(format!("HC{n} dims"), a, b));
        report.push(Check::equal(format!("HC{n} induced rank"), a, rank));
    }
    hp_check(&mut report, "", &cs, &ct, f)?;
    Ok(report)
}

/// For an ideal with `I_0 = 0`, `A → A/I` induces an isomorphism on `HP`.
pub fn verify_nilpotent_quotient(
    a: &AInfinityAlgebra,
    ideal: &AInfinityIdeal,
    window: ComplexWindow,
) -> Result<VerifyReport> {
    if ideal.dim_in_degree(a, 0) != 0 {
        return Err(Error::Precondition("the ideal meets degree 0".into()));
    }
    let mut report = VerifyReport::new("A → A/I induces an isomorphism on HP when I_0 = 0", window);
    let (q, f) = quotient(a, ideal)?;
    let cs = CyclicComplexes::new(a, window)?;
    let ct = CyclicComplexes::new(&q, window)?;
    hp_check(&mut report, "", &cs, &ct, &f)?;
    Ok(report)
}

const CLASSICAL_HP_DEGREE: i64 = 5;

/// `HP(A) ≅ HP(H_0(A))`, both through the chain `A → A/J → (A/J)/I` of an
/// equivalence and a nilpotent quotient, and by direct comparison with
/// classical periodic cyclic homology of `H_0(A)`.
pub fn verify_hp_of_h0(a: &AInfinityAlgebra, window: ComplexWindow) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("HP(A) equals classical HP of H_0(A)", window);
    let h = h0(a)?;
    let classical = ClassicalAlgebra::from_ainf(&h)?;
    let cx = CyclicComplexes::new(a, window)?;
    let direct: Vec<Option<usize>> = [0, 1]
        .iter()
        .map(|p| cx.hp(*p).map(|r| r.dim))
        .collect::<Result<_>>()?;
    let oracle: Vec<usize> = [0, 1]
        .iter()
        .map(|p| classical.hp_dim(*p, CLASSICAL_HP_DEGREE))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Invariant("classical HP did not stabilize".into()))?;
    for parity in 0..2 {
        match direct[parity] {
            Some(d) => report.push(Check::equal(
                format!("direct HP{parity}"),
                oracle[parity],
                d,
            )),
            None => report.push(Check::new(
                format!("direct HP{parity}"),
                oracle[parity],
                "not stabilized",
                Status::Inconclusive,
            )),
        }
    }
    // Proof pipeline; steps whose ideal is zero are identities and skipped.
    let j = degree_one_contractible_ideal(a)?;
    let (b, cb) = if j.dim() == 0 {
        report.push(Check::equal("J = C ⊕ m1(C) is zero", true, true));
        (a.clone(), cx)
    } else {
        let (b, f) = quotient(a, &j)?;
        report.push(Check::equal(
            "A → A/J is an equivalence",
            true,
            is_equivalence(&f)?,
        ));
        let cb = CyclicComplexes::new(&b, window)?;
        hp_check(&mut report, "A → A/J: ", &cx, &cb, &f)?;
        drop(cx);
        (b, cb)
    };
    let i = AInfinityIdeal::positive_part(&b)?;
    let cb0 = if i.dim() == 0 {
        report.push(Check::equal("A/J is concentrated in degree 0", true, true));
        cb
    } else {
        let (b0, g) = quotient(&b, &i)?;
        let cb0 = CyclicComplexes::new(&b0, window)?;
        hp_check(&mut report, "A/J → H_0: ", &cb, &cb0, &g)?;
        cb0
    };
    for parity in 0..2 {
        let r = cb0.hp(parity as i64)?;
        match r.dim {
            Some(d) => report.push(Check::equal(
                format!("pipeline HP{parity}"),
                oracle[parity],
                d,
            )),
            None => report.push(Check::new(
                format!("pipeline HP{parity}"),
                oracle[parity],
                "not stabilized",
                Status::Inconclusive,
            )),
        }
    }
    Ok(report)
}

/// `H(Tot CC⁺) = H(C^λ)` in reliable degrees.
pub fn verify_quasi_iso(a: &AInfinityAlgebra, window: ComplexWindow) -> Result<VerifyReport> {
    let cx = CyclicComplexes::new(a, window)?;
    let mut report = VerifyReport::new("Tot CC⁺ and the λ-complex have the same homology", window);
    for n in 0..=window.reliable_bound() {
        report.push(Check::equal(
            format!("HC{n}"),
            cx.hc_dim(n)?,
            cx.hc_lambda_dim(n)?,
        ));
    }
    Ok(report)
}

/// Rank-exactness of `… → HH_n → HC_n → HC_{n−2} → HH_{n−1} → …`.
pub fn verify_sbi(a: &AInfinityAlgebra, window: ComplexWindow, max_n: i64) -> Result<VerifyReport> {
    let cx = CyclicComplexes::new(a, window)?;
    let mut report = VerifyReport::new("the S, B, I sequence is exact", window);
    for node in cx.sbi_check(max_n)? {
        report.push(Check::new(
            node.node.clone(),
            format!("dim {} = {} + {}", node.dim, node.rank_in, node.rank_out),
            format!("exact: {}", node.exact),
            Status::from_bool(node.exact),
        ));
    }
    Ok(report)
}

pub fn describe_vector(a: &AInfinityAlgebra, v: &[Q]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| format!("{}*{}", fmt_q(x), a.basis().label(i as u32)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Iso on `H_0(−, m_1)` and onto on `H_1(−, m_1)`.
pub fn is_one_connected(f: &StrictMorphism) -> Result<bool> {
    let dim = |v: Vec<usize>, d: usize| v.get(d).copied().unwrap_or(0);
    let (s0, t0, t1) = (
        dim(f.source.homology_dims(), 0),
        dim(f.target.homology_dims(), 0),
        dim(f.target.homology_dims(), 1),
    );
    Ok(s0 == t0 && f.homology_rank(0)? == t0 && f.homology_rank(1)? == t1)
}

/// Experiment: whether a 1-connected strict morphism induces an isomorphism
/// on stabilized `HP`. Reported as a conjecture check; callers must not treat
/// its status as a verdict.
pub fn conjecture_check_one_connected(
    f: &StrictMorphism,
    window: ComplexWindow,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "conjecture check: a 1-connected morphism induces an isomorphism on HP",
        window,
    );
    report.push(Check::equal("1-connected", true, is_one_connected(f)?));
    let cs = CyclicComplexes::new(f.source(), window)?;
    let ct = CyclicComplexes::new(f.target(), window)?;
    hp_check(&mut report, "", &cs, &ct, f)?;
    Ok(report)
}

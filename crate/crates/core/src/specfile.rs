//! JSON algebra specifications.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "dims": [2, 1],
//!   "labels": [["1", "x"], ["y"]],
//!   "unit": "1",
//!   "convention": "dg",
//!   "ops": {
//!     "1": [{"inputs": ["y"], "output": "x", "coeff": "1"}],
//!     "2": [{"inputs": ["1", "x"], "output": "x", "coeff": "1"}]
//!   },
//!   "trace": {"1": "1"},
//!   "ideal": [{"x": "1"}, {"y": "1"}],
//!   "derivation": {"degree": 0, "ops": {"1": [{"inputs": ["x"], "output": "x", "coeff": "1"}]}},
//!   "deformation": [{"2": [{"inputs": ["x", "x"], "output": "1", "coeff": "1"}]}]
//! }
//! ```
//!
//! `labels[d]` lists the basis of degree `d`. With `"convention": "ainf"`
//! (the default) the `ops` entries are the structure constants of `m_n`
//! directly; with `"dg"` only arities 1 and 2 are allowed and arity 2 holds
//! the plain product `ab`, converted by `m_2(a, b) = (−1)^{|a|} ab`.
//! Derivation and deformation blocks are always literal cochains, of
//! suspended degree `degree` and −1 respectively. Coefficients are exact
//! rational strings.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_stasheff, AInfinityAlgebra, StasheffViolation};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exactlin::GradedVectorSpace;
use crate::scalar::{fmt_q, parse_q, sign, Q};
use crate::tensor::GradedBasis;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Ainf,
    Dg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpEntry {
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: String,
}

/// Entries keyed by arity.
pub type OpTable = BTreeMap<String, Vec<OpEntry>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationBlock {
    pub degree: i64,
    pub ops: OpTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: String,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub convention: Convention,
    pub ops: OpTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<DerivationBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<Vec<OpTable>>,
}

fn is_default(c: &Convention) -> bool {
    *c == Convention::Ainf
}

/// A validated algebra with its optional attachments, still unchecked
/// against their own invariants (ideal absorption, trace closedness, …).
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: Option<String>,
    pub algebra: AInfinityAlgebra,
    pub ideal: Option<Vec<Vec<Q>>>,
    pub trace: Option<Vec<Q>>,
    pub derivation: Option<Cochain>,
    pub deformation: Option<Vec<Cochain>>,
}

pub fn parse_spec(path: impl AsRef<Path>) -> Result<AlgebraSpec> {
    read_spec(path)?.build()
}

pub fn parse_spec_str(text: &str) -> Result<AlgebraSpec> {
    read_spec_str(text)?.build()
}

/// The raw spec file, without building the algebra.
pub fn read_spec(path: impl AsRef<Path>) -> Result<SpecFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    read_spec_str(&text)
}

pub fn read_spec_str(text: &str) -> Result<SpecFile> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn field_err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

impl SpecFile {
    /// Space, structure cochain and unit, with degrees checked but not the
    /// Stasheff identities or unitality.
    fn structure(&self) -> Result<(GradedVectorSpace, GradedBasis, Cochain, Option<u32>)> {
        if self.field != "Q" {
            return Err(field_err(
                "field",
                format!("unsupported field {:?}, only \"Q\"", self.field),
            ));
        }
        if self.dims.len() != self.labels.len() {
            return Err(field_err("dims", "length differs from labels"));
        }
        for (d, (n, row)) in self.dims.iter().zip(&self.labels).enumerate() {
            if *n != row.len() {
                return Err(field_err(
                    &format!("labels[{d}]"),
                    format!("{} labels for dimension {n}", row.len()),
                ));
            }
        }
        let mut labels = self.labels.clone();
        while labels.last().is_some_and(Vec::is_empty) {
            labels.pop();
        }
        let space = if labels.iter().all(Vec::is_empty) {
            GradedVectorSpace::zero()
        } else {
            GradedVectorSpace::with_base(0, labels)?
        };
        let basis = GradedBasis::new(&space);
        let unit = match &self.unit {
            Some(u) => Some(
                basis
                    .index_of(u)
                    .ok_or_else(|| field_err("unit", format!("unknown label {u:?}")))?,
            ),
            None => None,
        };
        let m = match self.convention {
            Convention::Ainf => read_ops("ops", &self.ops, &basis, -1)?,
            Convention::Dg => {
                if let Some(k) = self.ops.keys().find(|k| *k != "1" && *k != "2") {
                    return Err(field_err(
                        &format!("ops.{k}"),
                        "the dg convention only has arities 1 and 2",
                    ));
                }
                let raw = read_ops("ops", &self.ops, &basis, -1)?;
                let mut m = Cochain::zero(-1);
                for (t, o, c) in raw.triples() {
                    let s = if t.len() == 2 {
                        sign(basis.degree(t[0]))
                    } else {
                        Q::from_integer(1.into())
                    };
                    m.add(&t, o, s * c);
                }
                m
            }
        };
        Ok((space, basis, m, unit))
    }

    /// Every failed Stasheff identity (one witness per arity), for reporting.
    pub fn stasheff_violations(&self) -> Result<(GradedBasis, Vec<StasheffViolation>)> {
        let (_, basis, m, _) = self.structure()?;
        let v = check_stasheff(&m, &basis);
        Ok((basis, v))
    }

    pub fn build(&self) -> Result<AlgebraSpec> {
        let (space, basis, m, unit) = self.structure()?;
        let algebra = AInfinityAlgebra::new(space, m, unit)?;
        let vector = |path: &str, entries: &BTreeMap<String, String>| -> Result<Vec<Q>> {
            let mut v = vec![Q::zero(); basis.len()];
            for (label, c) in entries {
                let e = basis
                    .index_of(label)
                    .ok_or_else(|| field_err(path, format!("unknown label {label:?}")))?;
                v[e as usize] = parse_q(c).map_err(|e| field_err(path, e))?;
            }
            Ok(v)
        };
        let ideal = match &self.ideal {
            Some(gens) => Some(
                gens.iter()
                    .enumerate()
                    .map(|(i, g)| vector(&format!("ideal[{i}]"), g))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let trace = self
            .trace
            .as_ref()
            .map(|t| vector("trace", t))
            .transpose()?;
        let derivation = match &self.derivation {
            Some(d) => Some(read_ops("derivation.ops", &d.ops, &basis, d.degree)?),
            None => None,
        };
        let deformation = match &self.deformation {
            Some(orders) => Some(
                orders
                    .iter()
                    .enumerate()
                    .map(|(i, o)| read_ops(&format!("deformation[{i}]"), o, &basis, -1))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        Ok(AlgebraSpec {
            name: self.name.clone(),
            algebra,
            ideal,
            trace,
            derivation,
            deformation,
        })
    }
}

/// Reads a cochain of suspended degree `sdeg`, checking each entry's degree.
fn read_ops(path: &str, ops: &OpTable, basis: &GradedBasis, sdeg: i64) -> Result<Cochain> {
    let mut m = Cochain::zero(sdeg);
    for (key, entries) in ops {
        let n: usize = key
            .parse()
            .map_err(|_| field_err(&format!("{path}.{key}"), "arity must be a positive integer"))?;
        if n == 0 && sdeg == -1 {
            return Err(field_err(
                &format!("{path}.{key}"),
                "no arity-0 structure maps",
            ));
        }
        for (i, entry) in entries.iter().enumerate() {
            let here = format!("{path}.{key}[{i}]");
            if entry.inputs.len() != n {
                return Err(field_err(
                    &here,
                    format!("{} inputs for arity {n}", entry.inputs.len()),
                ));
            }
            let look = |l: &String| {
                basis
                    .index_of(l)
                    .ok_or_else(|| field_err(&here, format!("unknown label {l:?}")))
            };
            let t: Vec<u32> = entry.inputs.iter().map(look).collect::<Result<_>>()?;
            let o = look(&entry.output)?;
            let expected = basis.tensor_degree(&t) + n as i64 - 1 + sdeg;
            if basis.degree(o) != expected {
                return Err(Error::Degree(format!(
                    "{here}: output {} has degree {}, expected {expected}",
                    entry.output,
                    basis.degree(o)
                )));
            }
            let c = parse_q(&entry.coeff).map_err(|e| field_err(&here, e))?;
            m.add(&t, o, c);
        }
    }
    Ok(m)
}

fn write_ops(m: &Cochain, basis: &GradedBasis) -> OpTable {
    let mut ops = OpTable::new();
    for (t, o, c) in m.triples() {
        ops.entry(t.len().to_string()).or_default().push(OpEntry {
            inputs: t.iter().map(|e| basis.label(*e).to_string()).collect(),
            output: basis.label(o).to_string(),
            coeff: fmt_q(&c),
        });
    }
    ops
}

/// Spec file for an algebra, in the literal `ainf` convention.
pub fn to_spec(a: &AInfinityAlgebra, name: Option<&str>) -> SpecFile {
    let dims = a.space().dims_from_zero();
    let labels = (0..dims.len() as i64)
        .map(|d| a.space().labels_in(d).to_vec())
        .collect();
    SpecFile {
        name: name.map(str::to_string),
        field: "Q".into(),
        dims,
        labels,
        unit: a.unit().map(|u| a.basis().label(u).to_string()),
        convention: Convention::Ainf,
        ops: write_ops(a.m(), a.basis()),
        ideal: None,
        trace: None,
        derivation: None,
        deformation: None,
    }
}

pub fn derivation_block(d: &Cochain, basis: &GradedBasis) -> DerivationBlock {
    DerivationBlock {
        degree: d.sdeg(),
        ops: write_ops(d, basis),
    }
}

pub fn deformation_block(terms: &[Cochain], basis: &GradedBasis) -> Vec<OpTable> {
    terms.iter().map(|t| write_ops(t, basis)).collect()
}

pub fn vector_block(v: &[Q], basis: &GradedBasis) -> BTreeMap<String, String> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (basis.label(i as u32).to_string(), fmt_q(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixtures() {
        for (name, a) in fixtures::named() {
            let text = serde_json::to_string(&to_spec(&a, Some(name))).unwrap();
            let back = parse_spec_str(&text).unwrap();
            assert_eq!(back.algebra, a, "{name}");
        }
    }

    #[test]
    fn ground_field() {
        let s = parse_spec_str(
            r#"{"field":"Q","dims":[1],"labels":[["1"]],"unit":"1",
               "ops":{"2":[{"inputs":["1","1"],"output":"1","coeff":"1"}]}}"#,
        )
        .unwrap();
        assert_eq!(s.algebra.space().dims(), vec![1]);
    }

    #[test]
    fn dg_convention_applies_sign() {
        let s = parse_spec_str(
            r#"{"field":"Q","dims":[1,1],"labels":[["1"],["y"]],"unit":"1","convention":"dg",
               "ops":{"2":[{"inputs":["1","1"],"output":"1","coeff":"1"},
                           {"inputs":["1","y"],"output":"y","coeff":"1"},
                           {"inputs":["y","1"],"output":"y","coeff":"1"}]}}"#,
        )
        .unwrap();
        assert_eq!(s.algebra, fixtures::graded_dual_numbers());
    }

    #[test]
    fn rejects_degree_violation() {
        let err = parse_spec_str(
            r#"{"field":"Q","dims":[1,1],"labels":[["1"],["y"]],
               "ops":{"2":[{"inputs":["y","y"],"output":"1","coeff":"1"}]}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Degree(_)), "{err}");
    }

    #[test]
    fn rejects_stasheff_violation() {
        let err = parse_spec_str(
            r#"{"field":"Q","dims":[2],"labels":[["a","b"]],
               "ops":{"2":[{"inputs":["a","a"],"output":"b","coeff":"1"},
                           {"inputs":["a","b"],"output":"a","coeff":"1"}]}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("Stasheff"), "{err}");
    }

    #[test]
    fn parse_errors_locate() {
        let err = parse_spec_str("{\"field\": \"Q\",\n \"dims\": [1,}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_spec_str(r#"{"field":"Q","dims":[1],"labels":[["1"]],"ops":{"2":[{"inputs":["1","1"],"output":"1","coeff":"1/0"}]}}"#)
            .unwrap_err();
        assert!(err.to_string().contains("ops.2[0]"), "{err}");
    }
}

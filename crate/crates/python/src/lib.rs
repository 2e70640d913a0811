//! Python bindings: algebras from spec files or fixtures, cochains with the
//! bracket and deformation differential, homology dimensions and the
//! verification reports. Rationals cross the boundary as `"p/q"` strings.

use ainf_core::bar::ComplexWindow;
use ainf_core::cochain::Cochain;
use ainf_core::cyclic::traces::closed_graded_traces;
use ainf_core::cyclic::CyclicComplexes;
use ainf_core::deformation::{format_witness, obstruction_class, FormalDeformation, Trace};
use ainf_core::gerstenhaber::{bracket, deformation_differential, DeformationComplex};
use ainf_core::scalar::{fmt_q, parse_q};
use ainf_core::specfile::{parse_spec, parse_spec_str, to_spec, vector_block, AlgebraSpec};
use ainf_core::verify::{
    degree_one_contractible_ideal, is_derivation, quotient, verify_equivalence_invariance,
    verify_hp_of_h0, verify_lie_derivative, verify_nilpotent_quotient, verify_quasi_iso,
    verify_sbi, AInfinityIdeal, Derivation, StrictMorphism, VerifyReport,
};
use ainf_core::{fixtures, AInfinityAlgebra};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn err(e: ainf_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn window(max_weight: usize, max_degree: i64) -> PyResult<ComplexWindow> {
    ComplexWindow::new(max_weight, max_degree).map_err(err)
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn report_to_py<'py>(py: Python<'py>, r: &VerifyReport) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &serde_json::to_string(r).expect("report serializes"))
}

/// A finite-dimensional A∞-algebra with the optional blocks of its spec file.
#[pyclass(name = "Algebra", module = "ainf", frozen)]
struct PyAlgebra {
    spec: AlgebraSpec,
}

impl PyAlgebra {
    fn a(&self) -> &AInfinityAlgebra {
        &self.spec.algebra
    }

    fn plain(a: AInfinityAlgebra) -> Self {
        PyAlgebra {
            spec: AlgebraSpec {
                name: None,
                algebra: a,
                ideal: None,
                trace: None,
                derivation: None,
                deformation: None,
            },
        }
    }

    fn cochain(&self, c: Cochain) -> PyCochain {
        PyCochain {
            algebra: self.a().clone(),
            inner: c,
        }
    }
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyAlgebra {
            spec: parse_spec_str(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        Ok(PyAlgebra {
            spec: parse_spec(path).map_err(err)?,
        })
    }

    /// One of `fixture_names()`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::named()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, a)| PyAlgebra::plain(a))
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    #[staticmethod]
    fn fixture_names() -> Vec<&'static str> {
        fixtures::named().into_iter().map(|(n, _)| n).collect()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.spec.name.clone()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.a().space().dims_from_zero()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        let b = self.a().basis();
        (0..b.len() as u32)
            .map(|e| b.label(e).to_string())
            .collect()
    }

    #[getter]
    fn unit(&self) -> Option<String> {
        self.a()
            .unit()
            .map(|u| self.a().basis().label(u).to_string())
    }

    fn __len__(&self) -> usize {
        self.a().dim()
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(dims={:?}, labels={:?})",
            self.dims(),
            self.labels()
        )
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&to_spec(self.a(), self.spec.name.as_deref()))
            .expect("spec serializes")
    }

    /// The structure maps `m` as a cochain of suspended degree −1.
    fn structure(&self) -> PyCochain {
        self.cochain(self.a().m().clone())
    }

    fn derivation(&self) -> Option<PyCochain> {
        self.spec.derivation.clone().map(|d| self.cochain(d))
    }

    /// Dimensions of `H(A, m_1)` by degree.
    fn homology_dims(&self) -> Vec<usize> {
        self.a().homology_dims()
    }

    #[pyo3(signature = (n, max_weight = 7, max_degree = 4))]
    fn hh(&self, n: i64, max_weight: usize, max_degree: i64) -> PyResult<usize> {
        CyclicComplexes::new(self.a(), window(max_weight, max_degree)?)
            .and_then(|cx| cx.hh_dim(n))
            .map_err(err)
    }

    #[pyo3(signature = (n, max_weight = 7, max_degree = 4))]
    fn hc(&self, n: i64, max_weight: usize, max_degree: i64) -> PyResult<usize> {
        CyclicComplexes::new(self.a(), window(max_weight, max_degree)?)
            .and_then(|cx| cx.hc_dim(n))
            .map_err(err)
    }

    /// The `S`-ladder report for periodic homology of the given parity.
    #[pyo3(signature = (parity, max_weight = 7, max_degree = 4))]
    fn hp<'py>(
        &self,
        py: Python<'py>,
        parity: i64,
        max_weight: usize,
        max_degree: i64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let cx = CyclicComplexes::new(self.a(), window(max_weight, max_degree)?).map_err(err)?;
        let r = cx.hp(parity).map_err(err)?;
        json_to_py(py, &serde_json::to_string(&r).expect("report serializes"))
    }

    /// `dim HH^p(A, A)`.
    #[pyo3(signature = (p, max_weight = 7, max_degree = 4))]
    fn cohomology(&self, p: i64, max_weight: usize, max_degree: i64) -> PyResult<usize> {
        DeformationComplex::new(self.a(), window(max_weight, max_degree)?)
            .and_then(|dc| dc.cohomology_dim(p))
            .map_err(err)
    }

    /// A basis of closed graded traces, each as `{label: value}`.
    fn traces(&self) -> Vec<std::collections::BTreeMap<String, String>> {
        closed_graded_traces(self.a())
            .iter()
            .map(|v| vector_block(v, self.a().basis()))
            .collect()
    }

    /// Runs one of `prop23`, `thm44`, `thm45`, `cor42`, `sbi`, `quasi-iso`.
    #[pyo3(signature = (claim, max_weight = 7, max_degree = 4))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        claim: &str,
        max_weight: usize,
        max_degree: i64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let w = window(max_weight, max_degree)?;
        let a = self.a();
        let ideal = || match &self.spec.ideal {
            Some(gens) => AInfinityIdeal::new(a, gens),
            None => AInfinityIdeal::positive_part(a),
        };
        let report = match claim {
            "prop23" => degree_one_contractible_ideal(a).and_then(|j| {
                let f = if j.dim() == 0 {
                    StrictMorphism::identity(a)
                } else {
                    quotient(a, &j)?.1
                };
                verify_equivalence_invariance(&f, w)
            }),
            "thm44" => ideal().and_then(|i| verify_nilpotent_quotient(a, &i, w)),
            "thm45" => verify_hp_of_h0(a, w),
            "cor42" => {
                let d = self
                    .spec
                    .derivation
                    .clone()
                    .ok_or_else(|| PyValueError::new_err("the algebra has no derivation"))?;
                Derivation::new(a, d).and_then(|d| verify_lie_derivative(a, &d, w))
            }
            "sbi" => verify_sbi(a, w, w.reliable_bound()),
            "quasi-iso" => verify_quasi_iso(a, w),
            other => return Err(PyValueError::new_err(format!("unknown claim {other:?}"))),
        }
        .map_err(err)?;
        report_to_py(py, &report)
    }

    /// Obstruction to extending the spec's deformation by one order.
    #[pyo3(signature = (max_weight = 6, max_degree = 4))]
    fn obstruction<'py>(
        &self,
        py: Python<'py>,
        max_weight: usize,
        max_degree: i64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let a = self.a();
        let terms = self
            .spec
            .deformation
            .clone()
            .ok_or_else(|| PyValueError::new_err("the algebra has no deformation"))?;
        let def = FormalDeformation::new(a.clone(), terms).map_err(err)?;
        let tau = self
            .spec
            .trace
            .clone()
            .map(|t| Trace::new(a, t))
            .transpose()
            .map_err(err)?;
        let r =
            obstruction_class(&def, tau.as_ref(), window(max_weight, max_degree)?).map_err(err)?;
        let out = serde_json::json!({
            "order": r.order,
            "obstruction": format_witness(&r.cochain, a.basis()),
            "hochschild_vanishes": r.hochschild_vanishes,
            "cyclic_vanishes": r.cyclic_vanishes,
            "witness": r.witness.map(|w| format_witness(&w, a.basis())),
        });
        json_to_py(py, &out.to_string())
    }
}

/// A multilinear map on the algebra's basis, of a fixed suspended degree.
#[pyclass(name = "Cochain", module = "ainf", frozen)]
struct PyCochain {
    algebra: AInfinityAlgebra,
    inner: Cochain,
}

#[pymethods]
impl PyCochain {
    /// `entries` are `(inputs, output, coeff)` triples of labels and a
    /// rational string.
    #[new]
    fn new(
        algebra: PyRef<'_, PyAlgebra>,
        degree: i64,
        entries: Vec<(Vec<String>, String, String)>,
    ) -> PyResult<Self> {
        let a = algebra.a();
        let b = a.basis();
        let look = |l: &str| {
            b.index_of(l)
                .ok_or_else(|| PyKeyError::new_err(l.to_string()))
        };
        let mut c = Cochain::zero(degree);
        for (inputs, output, coeff) in entries {
            let t: Vec<u32> = inputs.iter().map(|l| look(l)).collect::<PyResult<_>>()?;
            c.add(&t, look(&output)?, parse_q(&coeff).map_err(err)?);
        }
        c.check_degrees(b).map_err(err)?;
        Ok(PyCochain {
            algebra: a.clone(),
            inner: c,
        })
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.sdeg()
    }

    fn entries(&self) -> Vec<(Vec<String>, String, String)> {
        let b = self.algebra.basis();
        self.inner
            .triples()
            .into_iter()
            .map(|(t, o, c)| {
                (
                    t.iter().map(|e| b.label(*e).to_string()).collect(),
                    b.label(o).to_string(),
                    fmt_q(&c),
                )
            })
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Gerstenhaber bracket `[self, other]`.
    fn bracket(&self, other: PyRef<'_, PyCochain>) -> PyCochain {
        PyCochain {
            algebra: self.algebra.clone(),
            inner: bracket(&self.inner, &other.inner, self.algebra.basis()),
        }
    }

    /// `δx = [m, x]`.
    fn differential(&self) -> PyCochain {
        PyCochain {
            algebra: self.algebra.clone(),
            inner: deformation_differential(&self.inner, &self.algebra),
        }
    }

    fn is_derivation(&self) -> bool {
        is_derivation(&self.inner, &self.algebra).holds
    }

    fn __repr__(&self) -> String {
        format!(
            "Cochain(degree={}, {:?})",
            self.inner.sdeg(),
            format_witness(&self.inner, self.algebra.basis())
        )
    }
}

#[pymodule]
fn ainf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyCochain>()?;
    Ok(())
}

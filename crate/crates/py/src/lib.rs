//! Python bindings: elements, elementary modules and Γ-systems, with reports
//! returned as plain dicts.

use iwalab::algebra::{simple_element, AlgebraElement, UnitCharacter};
use iwalab::flats::{detect_flats, ns_hypothesis_level, zero_set_level, NsVerdict, DEFAULT_BUDGET};
use iwalab::ideals::{chi, finite_level_size, growth_profile, split_p, split_simple, ElementaryModule};
use iwalab::io;
use iwalab::systems::{self, GammaSystem, Mode, SearchBudget};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(iwalab_py, IwalabError, PyException);

fn err(e: iwalab::Error) -> PyErr {
    IwalabError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| IwalabError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// An element of Z[Γ] with Γ ≅ Z^d, from (coefficient, exponent vector) terms.
#[pyclass(name = "Element", module = "iwalab_py", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyElement {
    inner: AlgebraElement,
}

#[pymethods]
impl PyElement {
    #[new]
    fn new(d: usize, terms: Vec<(i64, Vec<i64>)>) -> PyResult<Self> {
        if let Some((_, v)) = terms.iter().find(|(_, v)| v.len() != d) {
            return Err(IwalabError::new_err(format!("exponent vector {v:?} has length {}, expected {d}", v.len())));
        }
        Ok(PyElement { inner: AlgebraElement::from_int_terms(d, &terms) })
    }

    /// γ_{i+1} in rank d.
    #[staticmethod]
    fn gamma(d: usize, i: usize) -> Self {
        PyElement { inner: AlgebraElement::gamma(d, i) }
    }

    /// The simple element f_{γ,ζ} for γ = γ^v and ζ of order p^l.
    #[staticmethod]
    fn simple(p: u64, v: Vec<i64>, l: u32) -> PyResult<Self> {
        simple_element(p, &v, l).map(|inner| PyElement { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_json(d: usize, text: &str) -> PyResult<Self> {
        let doc: io::ElementDoc = serde_json::from_str(text).map_err(|e| IwalabError::new_err(e.to_string()))?;
        io::element_from_doc(d, &doc, "element").map(|inner| PyElement { inner }).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        let doc = io::element_to_doc(&self.inner).map_err(err)?;
        Ok(serde_json::to_string(&doc).expect("elements serialize"))
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.rank()
    }

    fn sharp(&self) -> Self {
        PyElement { inner: self.inner.sharp() }
    }

    fn __add__(&self, other: &PyElement) -> PyResult<Self> {
        self.inner.add(&other.inner).map(|inner| PyElement { inner }).map_err(err)
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<Self> {
        self.inner.sub(&other.inner).map(|inner| PyElement { inner }).map_err(err)
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<Self> {
        self.inner.mul(&other.inner).map(|inner| PyElement { inner }).map_err(err)
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        PyElement { inner: self.inner.pow(k) }
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.inner)
    }

    /// Exponent tuples of the characters of Γ_n killing the element.
    #[pyo3(signature = (p, n, budget = DEFAULT_BUDGET))]
    fn zero_set(&self, p: u64, n: u32, budget: u128) -> PyResult<Vec<Vec<u64>>> {
        let z = zero_set_level(&self.inner, p, n, budget).map_err(err)?;
        Ok(z.into_iter().map(|w| w.c).collect())
    }

    /// Flat cover of the zero set at level n.
    #[pyo3(signature = (p, n, budget = DEFAULT_BUDGET))]
    fn flats<'py>(&self, py: Python<'py>, p: u64, n: u32, budget: u128) -> PyResult<Bound<'py, PyAny>> {
        let z = zero_set_level(&self.inner, p, n, budget).map_err(err)?;
        to_py(py, &detect_flats(&z, p, n, self.inner.rank()))
    }

    /// "holds", "violated" or "undetermined" at level n.
    #[pyo3(signature = (p, n, budget = DEFAULT_BUDGET))]
    fn ns_check(&self, p: u64, n: u32, budget: u128) -> PyResult<&'static str> {
        let (v, _) = ns_hypothesis_level(&self.inner, p, n, budget).map_err(err)?;
        Ok(match v {
            NsVerdict::Holds => "holds",
            NsVerdict::ViolatedAtLevel(_) => "violated",
            NsVerdict::Undetermined => "undetermined",
        })
    }

    /// rank_{Z_p} Λ/(I_n + (ξ)) for n = 0..=top.
    #[pyo3(signature = (p, top, budget = DEFAULT_BUDGET))]
    fn growth(&self, p: u64, top: u32, budget: u128) -> PyResult<Vec<u64>> {
        growth_profile(&self.inner, p, top, budget).map(|g| g.ranks).map_err(err)
    }
}

/// ⊕ Λ/(ξ_i^{r_i}).
#[pyclass(name = "Module", module = "iwalab_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyElementary {
    inner: ElementaryModule,
}

#[pymethods]
impl PyElementary {
    #[new]
    fn new(p: u64, d: usize, factors: Vec<(PyElement, u32)>) -> PyResult<Self> {
        let f = factors.into_iter().map(|(x, r)| (x.inner, r)).collect();
        ElementaryModule::new(p, d, f).map(|inner| PyElementary { inner }).map_err(err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p
    }

    #[getter]
    fn factors(&self) -> Vec<(PyElement, u32)> {
        self.inner.factors.iter().map(|f| (PyElement { inner: f.xi.clone() }, f.r)).collect()
    }

    /// Generator of the characteristic ideal.
    fn char_ideal(&self) -> PyResult<PyElement> {
        chi(&self.inner).generator().map(|inner| PyElement { inner }).map_err(err)
    }

    /// log_p |M/I_n M|.
    #[pyo3(signature = (n, budget = DEFAULT_BUDGET))]
    fn size_exponent(&self, n: u32, budget: u128) -> PyResult<u64> {
        finite_level_size(&self.inner, n, budget).map(|r| r.exponent).map_err(err)
    }

    /// (simple part, rest) for by="simple", (p-part, rest) for by="p".
    fn split(&self, by: &str) -> PyResult<(PyElementary, PyElementary)> {
        let r = match by {
            "simple" => split_simple(&self.inner),
            "p" => split_p(&self.inner),
            _ => return Err(IwalabError::new_err(format!("split by {by:?}: expected \"simple\" or \"p\""))),
        };
        Ok((PyElementary { inner: r.first }, PyElementary { inner: r.second }))
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self.inner.factors.iter().map(|f| format!("Λ/({})^{}", f.xi, f.r)).collect();
        format!("Module(p={}, {})", self.inner.p, if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

#[pyclass(name = "System", module = "iwalab_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PySystem {
    inner: GammaSystem,
}

fn wrap(r: iwalab::Result<GammaSystem>) -> PyResult<PySystem> {
    r.map(|inner| PySystem { inner }).map_err(err)
}

#[pymethods]
impl PySystem {
    /// The standard system of `module` up to level `levels`; mode "full" or "torsion".
    #[staticmethod]
    #[pyo3(signature = (module, levels, mode = "full", budget = DEFAULT_BUDGET))]
    fn synthesize(module: &PyElementary, levels: u32, mode: &str, budget: u128) -> PyResult<Self> {
        let mode = match mode {
            "full" => Mode::Full,
            "torsion" => Mode::Torsion,
            _ => return Err(IwalabError::new_err(format!("mode {mode:?}: expected \"full\" or \"torsion\""))),
        };
        wrap(systems::from_torsion_module(&module.inner, levels, mode, budget))
    }

    /// A document with a system block.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = io::parse_document(text).map_err(err)?;
        let s = doc.system.as_ref().ok_or_else(|| IwalabError::new_err("the document has no system block"))?;
        wrap(io::system_from_doc(&doc.header, s))
    }

    fn to_json(&self) -> String {
        io::to_json(&io::system_document(&self.inner))
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn top(&self) -> u32 {
        self.inner.top()
    }

    /// log_p |a_n| for n = 0..=N.
    fn a_orders(&self) -> Vec<u32> {
        self.inner.a_orders()
    }

    fn b_orders(&self) -> Vec<u32> {
        self.inner.b_orders()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &systems::validate(&self.inner))
    }

    fn is_valid(&self) -> bool {
        systems::validate(&self.inner).passed()
    }

    fn strong_control<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &systems::is_strongly_controlled(&self.inner))
    }

    fn derived_prime(&self) -> PyResult<Self> {
        wrap(systems::derived_prime(&self.inner))
    }

    /// Twist by γ_i ↦ u_i, with the character taken mod p^precision.
    fn twist(&self, u: Vec<i128>, precision: u32) -> PyResult<Self> {
        let phi = UnitCharacter::new(self.inner.p(), precision, &u).map_err(err)?;
        wrap(systems::twist_system(&self.inner, &phi))
    }

    #[pyo3(signature = (enumerate = 1 << 16, samples = 4096, seed = 0))]
    fn funeq<'py>(&self, py: Python<'py>, enumerate: u64, samples: u64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let rep = systems::funeq_check(&self.inner, SearchBudget { enumerate, samples, seed }).map_err(err)?;
        to_py(py, &rep)
    }

    fn limit_invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &systems::limit_invariants(&self.inner).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("System(p={}, d={}, N={}, b orders {:?})", self.inner.p(), self.inner.d(), self.inner.top(), self.inner.b_orders())
    }
}

#[pymodule]
fn iwalab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("IwalabError", m.py().get_type::<IwalabError>())?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyElementary>()?;
    m.add_class::<PySystem>()?;
    Ok(())
}

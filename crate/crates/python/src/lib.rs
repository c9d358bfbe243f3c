//! Python bindings. Exact quantities come back as `int` / `fractions.Fraction`,
//! invariants as `complex`.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use seifert_rt::invariants::{self, ComplexityCap, EvalOptions};
use seifert_rt::modular::{self, check_axioms as core_check_axioms};
use seifert_rt::seifert::{self, Base};
use seifert_rt::sl2z;
use seifert_rt::{CfStyle, Error, LensSpace, Method, SeifertData, Sl2z};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ComplexityCap(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn style(s: &str) -> PyResult<CfStyle> {
    s.parse().map_err(py_err)
}

fn fraction<'py>(py: Python<'py>, q: &num_rational::BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.numer().clone(), q.denom().clone()))
}

/// Seifert invariants `{base; g; b; (α_j, β_j)}`.
#[pyclass(name = "Seifert", module = "seifert_rt", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySeifert(SeifertData);

#[pymethods]
impl PySeifert {
    /// Parses the text form, e.g. `"o;g=0;b=-1;2/1,3/1,5/1"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PySeifert).map_err(py_err)
    }

    #[staticmethod]
    #[pyo3(signature = (base, genus, pairs, b=None))]
    fn from_pairs(base: &str, genus: u32, pairs: Vec<(i64, i64)>, b: Option<i64>) -> PyResult<Self> {
        let base = match base {
            "o" => Base::Orientable,
            "n" => Base::NonOrientable,
            other => return Err(PyValueError::new_err(format!("base must be 'o' or 'n', got '{other}'"))),
        };
        SeifertData::from_pairs(base, genus, b, &pairs).map(PySeifert).map_err(py_err)
    }

    /// Seeded random manifolds from the verification generator.
    #[staticmethod]
    fn random_batch(seed: u64, count: usize) -> Vec<PySeifert> {
        seifert::random_batch(seed, count).into_iter().map(PySeifert).collect()
    }

    #[getter]
    fn base(&self) -> &'static str {
        self.0.base().letter()
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.0.genus()
    }

    #[getter]
    fn b(&self) -> Option<i64> {
        self.0.b()
    }

    #[getter]
    fn pairs(&self) -> Vec<(i64, i64)> {
        self.0.pairs().iter().map(|f| (f.alpha, f.beta)).collect()
    }

    #[getter]
    fn is_normalized(&self) -> bool {
        self.0.is_normalized()
    }

    fn normalize(&self) -> Self {
        PySeifert(self.0.normalize())
    }

    fn reverse_orientation(&self) -> PyResult<Self> {
        self.0.reverse_orientation().map(PySeifert).map_err(py_err)
    }

    fn euler_number<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.euler_number())
    }

    fn are_equivalent(&self, other: &PySeifert) -> bool {
        self.0.are_equivalent(&other.0)
    }

    fn first_betti(&self) -> PyResult<u32> {
        self.0.first_betti().map_err(py_err)
    }

    #[pyo3(signature = (cf_style="minus"))]
    fn chains(&self, cf_style: &str) -> PyResult<Vec<Vec<BigInt>>> {
        Ok(self.0.chains(style(cf_style)?).iter().map(|c| c.entries().to_vec()).collect())
    }

    /// Signature of the surgery linking matrix, by exact elimination.
    #[pyo3(signature = (cf_style="minus"))]
    fn signature(&self, cf_style: &str) -> PyResult<i64> {
        let cfs = self.0.chains(style(cf_style)?);
        let l = sl2z::linking_matrix(&self.0, &cfs).map_err(py_err)?;
        sl2z::signature_exact(&l).map(|(s, _)| s).map_err(py_err)
    }

    fn applicable_methods(&self) -> Vec<&'static str> {
        invariants::applicable_methods(&self.0).into_iter().map(Method::name).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Seifert('{}')", self.0)
    }
}

/// `τ_r(M)` by the named route.
#[pyfunction]
#[pyo3(signature = (m, r, method="generic", cf_style="minus", max_chain_total=None))]
fn tau(m: &PySeifert, r: u32, method: &str, cf_style: &str, max_chain_total: Option<usize>) -> PyResult<Complex64> {
    let method: Method = method.parse().map_err(py_err)?;
    let cap = max_chain_total.map(|n| ComplexityCap { max_chain_total: n, max_level: r.max(10) });
    let opts = EvalOptions { cf_style: style(cf_style)?, datum: None, cap };
    invariants::tau(method, r, &m.0, &opts).map(|x| x.value).map_err(py_err)
}

/// `(direct, surgery)` evaluations of `τ_r(L(p, q))`.
#[pyfunction]
fn tau_lens(p: i64, q: i64, r: u32) -> PyResult<(Complex64, Complex64)> {
    let l = LensSpace::new(p, q).map_err(py_err)?;
    let e = invariants::tau_lens(r, l).map_err(py_err)?;
    Ok((e.direct.value, e.corollary.value))
}

#[pyfunction]
fn dedekind_sum<'py>(py: Python<'py>, h: BigInt, k: BigInt) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &sl2z::dedekind_sum(h, k).map_err(py_err)?)
}

/// Φ of `[[a, b], [c, d]]`.
#[pyfunction]
fn rademacher_phi<'py>(py: Python<'py>, a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> PyResult<Bound<'py, PyAny>> {
    let m = Sl2z::new(a, b, c, d).map_err(py_err)?;
    fraction(py, &sl2z::rademacher_phi(&m))
}

#[pyfunction]
#[pyo3(signature = (p, q, cf_style="minus"))]
fn cf_expand(p: BigInt, q: BigInt, cf_style: &str) -> PyResult<Vec<BigInt>> {
    Ok(sl2z::cf_expand(p, q, style(cf_style)?).map_err(py_err)?.entries().to_vec())
}

#[pyfunction]
#[pyo3(signature = (r, g, colors=Vec::new()))]
fn verlinde_dim(r: u32, g: u32, colors: Vec<usize>) -> PyResult<f64> {
    let d = modular::sl2_datum(r).map_err(py_err)?;
    invariants::verlinde_dim(&d, g, &colors).map_err(py_err)
}

/// Modular data of sl₂ at level `r − 2`.
#[pyclass(name = "ModularDatum", module = "seifert_rt", frozen)]
struct PyDatum(seifert_rt::ModularDatum);

#[pymethods]
impl PyDatum {
    #[staticmethod]
    fn sl2(r: u32) -> PyResult<Self> {
        modular::sl2_datum(r).map(PyDatum).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        seifert_rt::ModularDatum::from_json_str(text).map(PyDatum).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json_string()
    }

    #[getter]
    fn n_labels(&self) -> usize {
        self.0.n_labels
    }

    #[getter]
    fn rank(&self) -> f64 {
        self.0.rank
    }

    #[getter]
    fn dims(&self) -> Vec<f64> {
        self.0.dims.clone()
    }

    #[getter]
    fn twists(&self) -> Vec<Complex64> {
        self.0.v.clone()
    }

    #[getter]
    fn s_matrix(&self) -> Vec<Vec<Complex64>> {
        let s = &self.0.s;
        (0..s.nrows()).map(|i| (0..s.ncols()).map(|j| s[(i, j)]).collect()).collect()
    }

    fn anomaly(&self) -> Complex64 {
        self.0.anomaly()
    }

    /// Residual of every axiom and whether all are below `tolerance`.
    #[pyo3(signature = (tolerance=1e-10))]
    fn check_axioms<'py>(&self, py: Python<'py>, tolerance: f64) -> PyResult<Bound<'py, PyDict>> {
        let rep = core_check_axioms(&self.0, tolerance);
        let out = PyDict::new(py);
        for (name, x) in rep.residuals() {
            out.set_item(name, x)?;
        }
        out.set_item("passed", rep.passed())?;
        Ok(out)
    }
}

#[pymodule(name = "seifert_rt")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeifert>()?;
    m.add_class::<PyDatum>()?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(tau_lens, m)?)?;
    m.add_function(wrap_pyfunction!(dedekind_sum, m)?)?;
    m.add_function(wrap_pyfunction!(rademacher_phi, m)?)?;
    m.add_function(wrap_pyfunction!(cf_expand, m)?)?;
    m.add_function(wrap_pyfunction!(verlinde_dim, m)?)?;
    m.add("METHODS", Method::ALL.iter().map(|k| k.name()).collect::<Vec<_>>())?;
    Ok(())
}

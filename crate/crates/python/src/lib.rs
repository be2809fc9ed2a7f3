use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use mds_selfdual::cli;
use mds_selfdual::field::make_field_of_order;
use mds_selfdual::grs::{check_mds, check_self_dual, min_distance, CodeRecord, MdsMode};
use mds_selfdual::search;
use mds_selfdual::selftest;
use mds_selfdual::{Error, ErrorKind, FieldElement, FieldSpec, Limits, SelfDualCode};

create_exception!(mdsdual, MdsError, PyException);
create_exception!(mdsdual, HypothesisError, MdsError);
create_exception!(mdsdual, VerificationError, MdsError);
create_exception!(mdsdual, LimitError, MdsError);
create_exception!(mdsdual, InputError, MdsError);

fn to_py(err: Error) -> PyErr {
    let msg = err.to_string();
    match err.kind() {
        ErrorKind::Hypothesis => HypothesisError::new_err(msg),
        ErrorKind::Verification => VerificationError::new_err(msg),
        ErrorKind::Limit => LimitError::new_err(msg),
        ErrorKind::Input => InputError::new_err(msg),
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite field GF(q) of odd characteristic; elements are integer codes
/// (0 is zero, i is θ^(i-1)).
#[pyclass(name = "Field", module = "mdsdual", frozen)]
struct PyField {
    inner: FieldSpec,
}

impl PyField {
    fn el(&self, code: u64) -> PyResult<FieldElement> {
        self.inner.element(code).map_err(to_py)
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (q, table_limit = None))]
    fn new(q: u64, table_limit: Option<u64>) -> PyResult<Self> {
        let limit = table_limit.unwrap_or(Limits::default().table_limit);
        Ok(PyField {
            inner: make_field_of_order(q, limit).map_err(to_py)?,
        })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus().to_vec()
    }

    fn from_int(&self, i: i64) -> u32 {
        self.inner.from_int(i).code()
    }

    fn to_int(&self, x: u64) -> PyResult<Option<u64>> {
        Ok(self.inner.to_int(self.el(x)?))
    }

    fn add(&self, x: u64, y: u64) -> PyResult<u32> {
        Ok(self.inner.add(self.el(x)?, self.el(y)?).code())
    }

    fn sub(&self, x: u64, y: u64) -> PyResult<u32> {
        Ok(self.inner.sub(self.el(x)?, self.el(y)?).code())
    }

    fn mul(&self, x: u64, y: u64) -> PyResult<u32> {
        Ok(self.inner.mul(self.el(x)?, self.el(y)?).code())
    }

    fn inv(&self, x: u64) -> PyResult<u32> {
        let x = self.el(x)?;
        if x.is_zero() {
            return Err(PyValueError::new_err("zero has no inverse"));
        }
        Ok(self.inner.inv(x).code())
    }

    fn pow(&self, x: u64, e: i64) -> PyResult<u32> {
        let x = self.el(x)?;
        if x.is_zero() && e < 0 {
            return Err(PyValueError::new_err("negative power of zero"));
        }
        Ok(self.inner.pow(x, e).code())
    }

    /// Quadratic character: 1 on squares, -1 on non-squares.
    fn eta(&self, x: u64) -> PyResult<i8> {
        self.inner.quadratic_character(self.el(x)?).map_err(to_py)
    }

    fn sqrt(&self, x: u64) -> PyResult<Option<u32>> {
        Ok(self.inner.sqrt(self.el(x)?).map(|r| r.code()))
    }

    fn descriptor<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let text = serde_json::to_string(&self.inner.descriptor()).expect("descriptor serializes");
        json_to_py(py, &text)
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.q())
    }
}

/// A verified MDS self-dual (extended) GRS code.
#[pyclass(name = "Code", module = "mdsdual", frozen)]
struct PyCode {
    inner: SelfDualCode,
}

#[pymethods]
impl PyCode {
    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.field().q()
    }

    #[getter]
    fn extended(&self) -> bool {
        self.inner.eval_set().is_extended()
    }

    #[getter]
    fn points(&self) -> Vec<u32> {
        self.inner.eval_set().points().iter().map(|x| x.code()).collect()
    }

    #[getter]
    fn multipliers(&self) -> Vec<u32> {
        self.inner
            .eval_set()
            .multipliers()
            .map(|v| v.iter().map(|x| x.code()).collect())
            .unwrap_or_default()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field().clone(),
        }
    }

    #[getter]
    fn provenance<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let text = serde_json::to_string(self.inner.provenance()).expect("provenance serializes");
        json_to_py(py, &text)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Rows of the generator matrix as lists of element codes.
    fn generator_matrix(&self) -> Vec<Vec<u32>> {
        let g = self.inner.generator_matrix();
        (0..g.rows()).map(|i| g.row(i).iter().map(|x| x.code()).collect()).collect()
    }

    /// G·Gᵀ = 0 and rank k, by direct linear algebra.
    fn is_self_dual(&self) -> PyResult<bool> {
        check_self_dual(&self.inner.generator_matrix()).map_err(to_py)
    }

    #[pyo3(signature = (enumeration_limit = None))]
    fn min_distance(&self, enumeration_limit: Option<u64>) -> PyResult<usize> {
        let limit = enumeration_limit.unwrap_or(Limits::default().enumeration_limit);
        min_distance(&self.inner.generator_matrix(), limit).map_err(to_py)
    }

    #[pyo3(signature = (mode = "sampled"))]
    fn is_mds(&self, mode: &str) -> PyResult<bool> {
        let mode: MdsMode = mode.parse().map_err(to_py)?;
        check_mds(&self.inner.generator_matrix(), mode, &Limits::default()).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Code([{}, {}] over GF({}) via {})",
            self.inner.length(),
            self.inner.k(),
            self.inner.field().q(),
            self.inner.provenance().theorem
        )
    }
}

fn param_string(value: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(list) = value.cast::<PyList>() {
        let parts = list
            .iter()
            .map(|x| x.extract::<u64>().map(|v| v.to_string()))
            .collect::<PyResult<Vec<_>>>()?;
        return Ok(parts.join(","));
    }
    if let Ok(v) = value.extract::<u64>() {
        return Ok(v.to_string());
    }
    value.extract::<String>()
}

/// Build a code: construct("th1", r=9, m=2, e=1, t=2).
#[pyfunction]
#[pyo3(signature = (theorem, permissive = false, length_limit = None, **params))]
fn construct(
    theorem: &str,
    permissive: bool,
    length_limit: Option<u64>,
    params: Option<&Bound<'_, PyDict>>,
) -> PyResult<PyCode> {
    let mut values = BTreeMap::new();
    if let Some(d) = params {
        for (k, v) in d.iter() {
            values.insert(k.extract::<String>()?, param_string(&v)?);
        }
    }
    let mut limits = Limits::default();
    if let Some(l) = length_limit {
        limits.length_limit = l;
    }
    let inner = cli::construct(theorem, &values, permissive, &limits).map_err(to_py)?;
    Ok(PyCode { inner })
}

/// Check a code JSON string; returns the same report as the CLI.
#[pyfunction]
#[pyo3(signature = (code_json, mds = None))]
fn verify<'py>(py: Python<'py>, code_json: &str, mds: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let record = CodeRecord::from_json(code_json).map_err(to_py)?;
    let mode = mds.map(str::parse::<MdsMode>).transpose().map_err(to_py)?;
    let report = cli::verify_record(&record, mode, &Limits::default()).map_err(to_py)?;
    json_to_py(py, &report.to_json().to_string())
}

/// Catalog entries for GF(q) as a list of dicts.
#[pyfunction]
#[pyo3(signature = (q, max_n = None))]
fn catalog<'py>(py: Python<'py>, q: u64, max_n: Option<u64>) -> PyResult<Bound<'py, PyList>> {
    let cat = search::catalog(q, max_n.unwrap_or(q + 1), &Limits::default()).map_err(to_py)?;
    if let Some(first) = cat.flagged.first() {
        return Err(VerificationError::new_err(first.clone()));
    }
    let out = PyList::empty(py);
    for line in cat.to_jsonl().lines() {
        out.append(json_to_py(py, line)?)?;
    }
    Ok(out)
}

/// Runs the identity suites; returns {suite: (checks, failures)}.
#[pyfunction]
#[pyo3(signature = (max_q = 200))]
fn run_selftest<'py>(py: Python<'py>, max_q: u64) -> PyResult<Bound<'py, PyDict>> {
    let reports = selftest::selftest(max_q, &Limits::default()).map_err(to_py)?;
    let out = PyDict::new(py);
    for r in reports {
        out.set_item(r.name, (r.checks, r.failures))?;
    }
    Ok(out)
}

#[pyfunction]
fn large_q_bound(n: usize) -> f64 {
    search::large_q_bound(n)
}

#[pymodule]
fn mdsdual(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    m.add_function(wrap_pyfunction!(large_q_bound, m)?)?;
    let py = m.py();
    m.add("MdsError", py.get_type::<MdsError>())?;
    m.add("HypothesisError", py.get_type::<HypothesisError>())?;
    m.add("VerificationError", py.get_type::<VerificationError>())?;
    m.add("LimitError", py.get_type::<LimitError>())?;
    m.add("InputError", py.get_type::<InputError>())?;
    Ok(())
}

//! Python bindings: invariants of surgery presentations, verification suites and the
//! Lie balancing report. Records come back as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hennings::diagrams::{h_of_m, linking, load};
use hennings::hennings::{crossing_limit, InvariantRecord};
use hennings::lie::{self, BalanceReport};
use hennings::suites::{algebra_by_name, run_suite, Outcome, Suite, SuiteConfig};
use hennings::Error;

create_exception!(hennings_py, ResourceError, PyRuntimeError);
create_exception!(hennings_py, VerifyError, PyRuntimeError);

/// Python exception class an error maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Value,
    Resource,
    Verify,
}

pub fn classify(e: &Error) -> ErrorKind {
    match e {
        Error::Resource(_) => ErrorKind::Resource,
        Error::Verify(_) => ErrorKind::Verify,
        _ => ErrorKind::Value,
    }
}

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match classify(&e) {
        ErrorKind::Value => PyValueError::new_err(msg),
        ErrorKind::Resource => ResourceError::new_err(msg),
        ErrorKind::Verify => VerifyError::new_err(msg),
    }
}

pub fn invariant_record(algebra: &str, ell: u32, link: &str, max_crossings: Option<usize>) -> hennings::Result<InvariantRecord> {
    let d = load(link)?;
    let h = algebra_by_name(algebra, ell)?;
    let limit = match max_crossings {
        Some(m) => Some(m),
        None => crossing_limit(ell)?,
    };
    InvariantRecord::compute(&d, &h, algebra, ell, "<string>", limit)
}

pub fn suite_outcomes(suite: &str, ell: u32, algebra: Option<String>, max_rank: usize) -> hennings::Result<Vec<Outcome>> {
    let s: Suite = suite.parse()?;
    run_suite(s, &SuiteConfig { algebra, ell, max_rank })
}

pub fn balance_report(cartan: &str, ell: i64, scale: i64) -> hennings::Result<BalanceReport> {
    lie::balance(cartan.parse()?, ell, scale)
}

fn record_dict<'py>(py: Python<'py>, r: &InvariantRecord) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("algebra", &r.algebra)?;
    d.set_item("ell", r.ell)?;
    d.set_item("sigma", r.sigma)?;
    d.set_item("h", r.h)?;
    d.set_item("order", r.order)?;
    d.set_item("value", &r.value)?;
    d.set_item("integral", r.integral)?;
    Ok(d)
}

/// Hennings invariant of the surgery manifold on a closed link, given as Morse-word text.
#[pyfunction]
#[pyo3(signature = (algebra, ell, link, max_crossings=None))]
fn invariant<'py>(
    py: Python<'py>,
    algebra: &str,
    ell: u32,
    link: &str,
    max_crossings: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = invariant_record(algebra, ell, link, max_crossings).map_err(to_py)?;
    record_dict(py, &r)
}

/// Linking matrix of a closed link.
#[pyfunction]
fn linking_matrix(link: &str) -> PyResult<Vec<Vec<i64>>> {
    let d = load(link).map_err(to_py)?;
    Ok(linking(&d).map_err(to_py)?.matrix)
}

/// Order of the first homology of the surgery manifold, 0 when infinite.
#[pyfunction]
fn homology_order(link: &str) -> PyResult<u64> {
    let d = load(link).map_err(to_py)?;
    h_of_m(&d).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (suite, ell=3, algebra=None, max_rank=8))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    ell: u32,
    algebra: Option<String>,
    max_rank: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let out = suite_outcomes(suite, ell, algebra, max_rank).map_err(to_py)?;
    out.iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("suite", &o.suite)?;
            d.set_item("check", &o.check)?;
            d.set_item("checked", o.checked)?;
            d.set_item("pass", o.pass)?;
            d.set_item("failure", o.failure.clone())?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
#[pyo3(signature = (cartan, ell, scale=1))]
fn balance<'py>(py: Python<'py>, cartan: &str, ell: i64, scale: i64) -> PyResult<Bound<'py, PyDict>> {
    let r = balance_report(cartan, ell, scale).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("cartan", &r.cartan)?;
    d.set_item("ell", r.ell)?;
    d.set_item("scale", r.scale)?;
    d.set_item("ell_i", r.ell_i.clone())?;
    d.set_item("tau", r.tau.clone())?;
    d.set_item("rho_tau", r.rho_tau)?;
    d.set_item("rho_tau_table", r.rho_tau_table)?;
    d.set_item("w", r.w)?;
    d.set_item("theta", r.theta.clone())?;
    d.set_item("clauses", r.clauses.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>())?;
    d.set_item("arithmetic_only", r.arithmetic_only)?;
    Ok(d)
}

#[pymodule]
fn hennings_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(invariant, m)?)?;
    m.add_function(wrap_pyfunction!(linking_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(homology_order, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(balance, m)?)?;
    m.add("ResourceError", m.py().get_type::<ResourceError>())?;
    m.add("VerifyError", m.py().get_type::<VerifyError>())?;
    Ok(())
}

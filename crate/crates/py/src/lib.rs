//! Python bindings for ψ evaluation, verification suites, transforms and
//! quadrature rules.

use ito_hermite::operators::{eigen_residual, OperatorId};
use ito_hermite::psi::{self, EvalRoute, ModeIndex, PuncturedPoint};
use ito_hermite::quad::{angular_trapezoid_rule, gauss_hermite_rule, gauss_laguerre_rule, QuadratureRule};
use ito_hermite::report;
use ito_hermite::suite::{self, Suite, SuiteConfig, DEFAULT_SEED};
use ito_hermite::Error;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

create_exception!(ito_hermite_py, BranchCutError, PyValueError);
create_exception!(ito_hermite_py, NotConvergedError, PyArithmeticError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BranchCut(_) => BranchCutError::new_err(e.to_string()),
        Error::NotConverged(_) | Error::TruncationNotConverged(_) | Error::EigenSolverFailure(_) => {
            NotConvergedError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// The family parameters (α, β); β within 1e-9 of an integer is classified
/// as that integer.
#[pyclass(name = "FamilyParams", frozen)]
struct PyFamilyParams {
    inner: psi::FamilyParams,
}

#[pymethods]
impl PyFamilyParams {
    #[new]
    fn new(alpha: f64, beta: f64) -> PyResult<Self> {
        Ok(Self { inner: psi::FamilyParams::new(alpha, beta).map_err(to_py)? })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta()
    }

    #[getter]
    fn beta_is_integer(&self) -> bool {
        self.inner.beta_is_integer()
    }

    fn is_admissible(&self, n: usize, m: i64) -> bool {
        ModeIndex::new(n, m).is_admissible(&self.inner)
    }

    /// ψ_{n,m}(z) by the named route.
    #[pyo3(signature = (n, m, z, route = "explicit"))]
    fn psi(&self, n: usize, m: i64, z: Complex64, route: &str) -> PyResult<Complex64> {
        let route: EvalRoute = route.parse().map_err(to_py)?;
        let z = PuncturedPoint::new(z).map_err(to_py)?;
        psi::eval_psi(route, &self.inner, &ModeIndex::new(n, m), &z).map_err(to_py)
    }

    fn norm_sq(&self, n: usize, m: i64) -> PyResult<f64> {
        psi::norm_sq(&self.inner, &ModeIndex::new(n, m)).map_err(to_py)
    }

    /// Holomorphic and anti-holomorphic orders at the origin.
    fn biorder(&self, n: usize, m: i64) -> PyResult<(i64, i64)> {
        let b = psi::biorder(&self.inner, &ModeIndex::new(n, m)).map_err(to_py)?;
        Ok((b.r, b.s))
    }

    /// |op f - λ f| / (1 + |f|) for the eigenfunction of `op` at (n, m).
    fn eigen_residual(&self, op: &str, n: usize, m: i64, z: Complex64, eigenvalue: f64) -> PyResult<f64> {
        let op: OperatorId = op.parse().map_err(to_py)?;
        eigen_residual(op, &self.inner, &ModeIndex::new(n, m), z, eigenvalue).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("FamilyParams(alpha={}, beta={})", self.inner.alpha(), self.inner.beta_input())
    }
}

#[pyclass(name = "VerificationReport", frozen, get_all)]
struct PyReport {
    identity_id: String,
    samples: usize,
    max_abs_residual: f64,
    max_rel_residual: f64,
    tolerance: f64,
    passed: bool,
    errata_corrected: bool,
    seed: Option<u64>,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "VerificationReport({}, samples={}, max_rel_residual={:e}, tolerance={:e}, passed={})",
            self.identity_id, self.samples, self.max_rel_residual, self.tolerance, self.passed
        )
    }
}

impl From<report::VerificationReport> for PyReport {
    fn from(r: report::VerificationReport) -> Self {
        Self {
            identity_id: r.identity_id,
            samples: r.samples,
            max_abs_residual: r.max_abs_residual,
            max_rel_residual: r.max_rel_residual,
            tolerance: r.tolerance,
            passed: r.passed,
            errata_corrected: r.errata_corrected,
            seed: r.seed,
        }
    }
}

/// Runs the named suites (all when `suites` is None).
#[pyfunction]
#[pyo3(signature = (suites = None, seed = DEFAULT_SEED, samples = None, tolerance = None))]
fn verify(py: Python<'_>, suites: Option<Vec<String>>, seed: u64, samples: Option<usize>, tolerance: Option<f64>) -> PyResult<Vec<PyReport>> {
    let list = match suites {
        Some(names) => names.iter().map(|s| s.parse::<Suite>()).collect::<Result<Vec<_>, _>>().map_err(to_py)?,
        None => Suite::ALL.to_vec(),
    };
    let cfg = SuiteConfig { seed, samples, tolerance, ..SuiteConfig::default() };
    let rows = py.detach(|| suite::run_suites(&list, &cfg));
    Ok(rows.into_iter().map(PyReport::from).collect())
}

/// Bargmann and S-transform checks on the basis e_0..e_{basis-1}.
#[pyfunction]
#[pyo3(signature = (params, m = 0, basis = 3, seed = DEFAULT_SEED))]
fn transform_reports(py: Python<'_>, params: PyRef<'_, PyFamilyParams>, m: i64, basis: usize, seed: u64) -> PyResult<Vec<PyReport>> {
    let p = params.inner;
    let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
    let rows = py.detach(|| suite::transform_reports(&p, m, basis, &cfg)).map_err(to_py)?;
    Ok(rows.into_iter().map(PyReport::from).collect())
}

fn split(rule: QuadratureRule) -> (Vec<f64>, Vec<f64>) {
    (rule.nodes, rule.weights)
}

/// Nodes and weights for ∫ t^a e^{-t} f(t) dt.
#[pyfunction]
#[pyo3(signature = (order, a = 0.0))]
fn gauss_laguerre(order: usize, a: f64) -> PyResult<(Vec<f64>, Vec<f64>)> {
    gauss_laguerre_rule(order, a).map(split).map_err(to_py)
}

/// Nodes and weights for ∫ e^{-x²} f(x) dx.
#[pyfunction]
fn gauss_hermite(order: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    gauss_hermite_rule(order).map(split).map_err(to_py)
}

/// Equispaced nodes and weights on [0, 2π).
#[pyfunction]
fn angular_trapezoid(order: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    angular_trapezoid_rule(order).map(split).map_err(to_py)
}

#[pymodule]
fn ito_hermite_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFamilyParams>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(transform_reports, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_hermite, m)?)?;
    m.add_function(wrap_pyfunction!(angular_trapezoid, m)?)?;
    m.add("BranchCutError", m.py().get_type::<BranchCutError>())?;
    m.add("NotConvergedError", m.py().get_type::<NotConvergedError>())?;
    Ok(())
}

//! Python bindings: `import capwave_py`.
//!
//! Plain data comes back as dicts and lists; solved waves as [`Wave`].

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use capwave::babenko::{self, SolverConfig, WaveProfile};
use capwave::dispersion::{self, Branch};
use capwave::interval::{self, Interval};
use capwave::spectral::{PeriodicGrid, RealField};
use capwave::{radicals, Error, PhysicalParams};

fn err(e: Error) -> PyErr {
    match e {
        Error::InvalidParams(_) | Error::NonNegativeFrequency(_) | Error::UseDimensionalPipeline(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Serializable value as Python objects, through `json.loads`.
fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn params(g: f64, sigma: f64, gamma: f64) -> PyResult<PhysicalParams> {
    PhysicalParams::new(g, sigma, gamma).map_err(err)
}

fn parse_branch(label: &str) -> PyResult<Branch> {
    match label {
        "c1" => Ok(Branch::Plus),
        "c2" => Ok(Branch::Minus),
        _ => Err(PyValueError::new_err(format!("branch must be 'c1' or 'c2', got {label:?}"))),
    }
}

/// Critical points of both dispersion branches.
#[pyfunction]
fn critical_points<'py>(py: Python<'py>, g: f64, sigma: f64, gamma: f64) -> PyResult<Bound<'py, PyAny>> {
    let cps = dispersion::critical_points(&params(g, sigma, gamma)?).map_err(err)?;
    to_py(py, &cps)
}

/// `(c+(k), c-(k))` for `k < 0`.
#[pyfunction]
fn wave_speeds(g: f64, sigma: f64, gamma: f64, k: f64) -> PyResult<(f64, f64)> {
    dispersion::wave_speed_branches(&params(g, sigma, gamma)?, k).map_err(err)
}

/// Closed-form critical frequencies at `G = 1/V`.
#[pyfunction]
#[pyo3(name = "solve_quartic", signature = (g_recip))]
fn solve_quartic<'py>(py: Python<'py>, g_recip: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &radicals::solve_quartic(g_recip).map_err(err)?)
}

#[pyfunction]
fn focusing_indicator(v: f64) -> PyResult<f64> {
    radicals::focusing_indicator(v).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (v_min=0.01, v_max=0.5, samples=100))]
fn sweep<'py>(py: Python<'py>, v_min: f64, v_max: f64, samples: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &radicals::sweep(v_min, v_max, samples).map_err(err)?)
}

/// Outward-rounded enclosure of `f` over `[v_lo, v_hi]`.
#[pyfunction]
fn f_enclosure(v_lo: f64, v_hi: f64) -> PyResult<(f64, f64)> {
    let x = Interval::new(v_lo, v_hi).map_err(err)?;
    let y = interval::f_of_v(x).map_err(err)?;
    Ok((y.lo, y.hi))
}

#[pyfunction]
#[pyo3(signature = (width=1e-9))]
fn vstar<'py>(py: Python<'py>, width: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &interval::vstar(width).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (samples=50))]
fn verify_asymptotic_lemmas<'py>(py: Python<'py>, samples: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &interval::verify_asymptotic_lemmas(samples).map_err(err)?)
}

/// Babenko residual of `u` sampled on `len(u)` nodes of `[-L/2, L/2)`.
#[pyfunction]
fn babenko_residual(u: Vec<f64>, length: f64, c: f64, g: f64, sigma: f64, gamma: f64) -> PyResult<Vec<f64>> {
    let grid = PeriodicGrid::new(u.len(), length).map_err(err)?;
    let f = RealField::new(grid, u).map_err(err)?;
    let r = babenko::babenko_residual(&f, c, &params(g, sigma, gamma)?).map_err(err)?;
    Ok(r.into_values())
}

/// A converged even solitary wave.
#[pyclass(frozen)]
struct Wave {
    inner: WaveProfile,
}

#[pymethods]
impl Wave {
    #[getter]
    fn alpha(&self) -> Vec<f64> {
        self.inner.u.grid().nodes()
    }

    #[getter]
    fn u(&self) -> Vec<f64> {
        self.inner.u.values().to_vec()
    }

    #[getter]
    fn seed(&self) -> Vec<f64> {
        self.inner.seed.values().to_vec()
    }

    #[getter]
    fn c(&self) -> f64 {
        self.inner.c
    }

    #[getter]
    fn c_star(&self) -> f64 {
        self.inner.c_star
    }

    #[getter]
    fn eps(&self) -> f64 {
        self.inner.eps
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.inner.omega
    }

    #[getter]
    fn sign(&self) -> f64 {
        self.inner.sign
    }

    #[getter]
    fn branch(&self) -> &'static str {
        self.inner.branch.label()
    }

    #[getter]
    fn residual_norm(&self) -> f64 {
        self.inner.residual_norm
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.u.grid().n
    }

    #[getter]
    fn length(&self) -> f64 {
        self.inner.u.grid().length
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations
    }

    /// `‖U − seed‖_{H¹}/ε`
    fn nls_error(&self) -> PyResult<f64> {
        babenko::nls_error(&self.inner).map_err(err)
    }

    fn sup_over_eps(&self) -> f64 {
        self.inner.sup_over_eps()
    }

    /// Columns `ImQ`, `ReW`, `ReQ` of the holomorphic reconstruction.
    fn reconstruct(&self) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let (w, q) = babenko::reconstruct(&self.inner).map_err(err)?;
        Ok((
            q.values().iter().map(|z| z.im).collect(),
            w.values().iter().map(|z| z.re).collect(),
            q.values().iter().map(|z| z.re).collect(),
        ))
    }

    fn __repr__(&self) -> String {
        let w = &self.inner;
        format!(
            "Wave(branch={}, eps={}, c={}, n={}, residual_norm={:.3e})",
            w.branch.label(),
            w.eps,
            w.c,
            w.u.grid().n,
            w.residual_norm
        )
    }
}

#[pyfunction]
#[pyo3(signature = (g, sigma, gamma, branch="c2", eps=0.04, sign=1.0))]
fn solve(
    py: Python<'_>,
    g: f64,
    sigma: f64,
    gamma: f64,
    branch: &str,
    eps: f64,
    sign: f64,
) -> PyResult<Wave> {
    let p = params(g, sigma, gamma)?;
    let b = parse_branch(branch)?;
    let w = py
        .detach(|| babenko::solve(&p, b, eps, sign, &SolverConfig::default()))
        .map_err(err)?;
    Ok(Wave { inner: w })
}

#[pymodule]
fn capwave_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Wave>()?;
    m.add_function(wrap_pyfunction!(critical_points, m)?)?;
    m.add_function(wrap_pyfunction!(wave_speeds, m)?)?;
    m.add_function(wrap_pyfunction!(solve_quartic, m)?)?;
    m.add_function(wrap_pyfunction!(focusing_indicator, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(f_enclosure, m)?)?;
    m.add_function(wrap_pyfunction!(vstar, m)?)?;
    m.add_function(wrap_pyfunction!(verify_asymptotic_lemmas, m)?)?;
    m.add_function(wrap_pyfunction!(babenko_residual, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    Ok(())
}

//! Python bindings for `rydberg-jc`.
//!
//! Build the importable module with
//! `cargo build --release -p rydberg-jc-py --features extension-module`
//! and copy `librydberg_jc_py.so` to `rydberg_jc_py.so`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rydberg_jc::oracle::suite::{run_suite as core_run_suite, SuiteOptions};
use rydberg_jc::{
    CoherentConfig, CoherentEvolution, EigenSystem, FockCase, FockScenario, ModelError, ModelParams,
    SubspaceState, Truncation,
};

fn to_py(e: ModelError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "ModelParams", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
pub struct PyModelParams {
    inner: ModelParams,
}

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (omega_f, omega_0, lambda_))]
    fn new(omega_f: f64, omega_0: f64, lambda_: f64) -> PyResult<Self> {
        let inner = ModelParams::new(omega_f, omega_0, lambda_).map_err(to_py)?;
        Ok(PyModelParams { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (omega_0, lambda_, delta))]
    fn with_detuning(omega_0: f64, lambda_: f64, delta: f64) -> PyResult<Self> {
        let inner = ModelParams::with_detuning(omega_0, lambda_, delta).map_err(to_py)?;
        Ok(PyModelParams { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (lambda_))]
    fn resonant(lambda_: f64) -> PyResult<Self> {
        let inner = ModelParams::resonant(lambda_).map_err(to_py)?;
        Ok(PyModelParams { inner })
    }

    #[getter]
    fn omega_f(&self) -> f64 {
        self.inner.omega_f()
    }

    #[getter]
    fn omega_0(&self) -> f64 {
        self.inner.omega_0()
    }

    #[getter]
    fn lambda_(&self) -> f64 {
        self.inner.lambda()
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta()
    }

    fn __repr__(&self) -> String {
        format!(
            "ModelParams(omega_f={:?}, omega_0={:?}, lambda_={:?})",
            self.inner.omega_f(),
            self.inner.omega_0(),
            self.inner.lambda()
        )
    }
}

#[pyclass(name = "EigenSystem", frozen)]
pub struct PyEigenSystem {
    inner: EigenSystem,
}

#[pymethods]
impl PyEigenSystem {
    #[new]
    fn new(n: u32, params: PyRef<'_, PyModelParams>) -> PyResult<Self> {
        let inner = EigenSystem::new(n, &params.inner).map_err(to_py)?;
        Ok(PyEigenSystem { inner })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    /// `(E_asym, E_plus, E_minus)`.
    #[getter]
    fn energies(&self) -> (f64, f64, f64) {
        let [a, p, m] = self.inner.energies();
        (a, p, m)
    }

    #[getter]
    fn omega_n(&self) -> f64 {
        self.inner.omega_n
    }

    #[getter]
    fn phi_n(&self) -> f64 {
        self.inner.phi_n
    }

    /// Rows of `R`; columns are the `asym`, `+`, `-` eigenvectors.
    #[getter]
    fn rotation(&self) -> Vec<Vec<f64>> {
        let r = &self.inner.rotation;
        (0..3).map(|i| (0..3).map(|j| r[(i, j)]).collect()).collect()
    }

    fn transfer_amplitude(&self) -> f64 {
        self.inner.transfer_amplitude()
    }
}

fn parse_case(case: &str) -> PyResult<FockCase> {
    match case {
        "A" => Ok(FockCase::A),
        "B" => Ok(FockCase::B),
        "C" => Ok(FockCase::C),
        "beta" => Ok(FockCase::Beta),
        other => Err(PyValueError::new_err(format!(
            "unknown case '{other}', expected A, B, C or beta"
        ))),
    }
}

#[pyclass(name = "FockScenario", frozen)]
pub struct PyFockScenario {
    inner: FockScenario,
}

#[pymethods]
impl PyFockScenario {
    /// `case` is `"A"`, `"B"`, `"C"`, `"beta"`, or a `(mu, nu, xi)` tuple.
    #[new]
    fn new(case: &Bound<'_, PyAny>, n: u32, params: PyRef<'_, PyModelParams>) -> PyResult<Self> {
        let case = match case.extract::<String>() {
            Ok(name) => parse_case(&name)?,
            Err(_) => {
                let (mu, nu, xi): (Complex64, Complex64, Complex64) = case.extract()?;
                FockCase::Custom(SubspaceState::new(mu, nu, xi))
            }
        };
        let inner = FockScenario::new(case, n, &params.inner).map_err(to_py)?;
        Ok(PyFockScenario { inner })
    }

    /// `(mu, nu, xi)` at time `t`.
    fn amplitudes(&self, t: f64) -> (Complex64, Complex64, Complex64) {
        let s = self.inner.amplitudes(t);
        (s.mu, s.nu, s.xi)
    }

    fn probabilities<'py>(&self, py: Python<'py>, t: f64) -> PyResult<Bound<'py, PyDict>> {
        let p = self.inner.probabilities(t);
        let d = PyDict::new(py);
        d.set_item("t", p.t)?;
        d.set_item("p1", p.p1)?;
        d.set_item("p2", p.p2)?;
        d.set_item("p3", p.p3)?;
        d.set_item("p_sym", p.p_sym)?;
        d.set_item("p_asym", p.p_asym)?;
        Ok(d)
    }
}

#[pyclass(name = "CoherentEvolution", frozen)]
pub struct PyCoherentEvolution {
    inner: CoherentEvolution,
}

#[pymethods]
impl PyCoherentEvolution {
    /// Give exactly one of `n_bar` (real amplitude) or `alpha`.
    #[new]
    #[pyo3(signature = (params, n_bar=None, alpha=None, tail_tol=1e-12))]
    fn new(
        params: PyRef<'_, PyModelParams>,
        n_bar: Option<f64>,
        alpha: Option<Complex64>,
        tail_tol: f64,
    ) -> PyResult<Self> {
        let alpha = match (n_bar, alpha) {
            (Some(nb), None) => {
                if !(nb.is_finite() && nb >= 0.0) {
                    return Err(PyValueError::new_err("n_bar must be finite and non-negative"));
                }
                Complex64::from(nb.sqrt())
            }
            (None, Some(a)) => a,
            _ => return Err(PyValueError::new_err("give exactly one of n_bar or alpha")),
        };
        let trunc = Truncation::auto(tail_tol).map_err(to_py)?;
        let cfg = CoherentConfig::new(alpha, params.inner, trunc).map_err(to_py)?;
        let inner = CoherentEvolution::new(cfg).map_err(to_py)?;
        Ok(PyCoherentEvolution { inner })
    }

    #[getter]
    fn m_max(&self) -> usize {
        self.inner.m_max()
    }

    fn point<'py>(&self, py: Python<'py>, t: f64) -> PyResult<Bound<'py, PyDict>> {
        let p = self.inner.point(t);
        let d = PyDict::new(py);
        d.set_item("t", p.t)?;
        d.set_item("p_sym", p.p_sym)?;
        d.set_item("p_gg", p.p_gg)?;
        d.set_item("gamma", p.gamma)?;
        d.set_item("epsilon", p.epsilon)?;
        Ok(d)
    }

    /// Columns `t, p_sym, p_gg, gamma, epsilon` as lists.
    fn time_series<'py>(&self, py: Python<'py>, grid: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
        let pts = py
            .detach(|| self.inner.time_series(&grid))
            .map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("t", pts.iter().map(|p| p.t).collect::<Vec<_>>())?;
        d.set_item("p_sym", pts.iter().map(|p| p.p_sym).collect::<Vec<_>>())?;
        d.set_item("p_gg", pts.iter().map(|p| p.p_gg).collect::<Vec<_>>())?;
        d.set_item("gamma", pts.iter().map(|p| p.gamma).collect::<Vec<_>>())?;
        d.set_item("epsilon", pts.iter().map(|p| p.epsilon).collect::<Vec<_>>())?;
        Ok(d)
    }
}

#[pyfunction]
fn mixing_angle(n: u32, params: PyRef<'_, PyModelParams>) -> PyResult<f64> {
    rydberg_jc::mixing_angle(n, &params.inner).map_err(to_py)
}

#[pyfunction]
fn rabi_frequency(n: u32, params: PyRef<'_, PyModelParams>) -> f64 {
    rydberg_jc::rabi_frequency(n, &params.inner)
}

#[pyfunction]
fn entangling_time(n: u32, params: PyRef<'_, PyModelParams>) -> PyResult<f64> {
    rydberg_jc::entangling_time(n, &params.inner).map_err(to_py)
}

#[pyfunction]
fn uniform_grid(start: f64, end: f64, points: usize) -> PyResult<Vec<f64>> {
    rydberg_jc::uniform_grid(start, end, points).map_err(to_py)
}

/// Oracle cross-checks as `(name, max_residual, tolerance, passed)` tuples.
#[pyfunction]
#[pyo3(signature = (tolerance_scale=1.0))]
fn run_suite(py: Python<'_>, tolerance_scale: f64) -> Vec<(String, f64, f64, bool)> {
    py.detach(|| core_run_suite(&SuiteOptions { tolerance_scale }))
        .into_iter()
        .map(|r| (r.name, r.max_residual, r.tolerance, r.passed))
        .collect()
}

#[pymodule]
pub fn rydberg_jc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyEigenSystem>()?;
    m.add_class::<PyFockScenario>()?;
    m.add_class::<PyCoherentEvolution>()?;
    m.add_function(wrap_pyfunction!(mixing_angle, m)?)?;
    m.add_function(wrap_pyfunction!(rabi_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(entangling_time, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_grid, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

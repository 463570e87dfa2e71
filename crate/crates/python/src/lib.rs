//! Python bindings for `gdewalk`.

use gdewalk::coin::{self, CoinCoefficients};
use gdewalk::convergence;
use gdewalk::evolve::{self, Engine};
use gdewalk::lattice::{InitMode, Spin, SpinorField};
use gdewalk::pathsum;
use gdewalk::spectrum;
use gdewalk::WalkError;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: WalkError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_spin(s: &str) -> PyResult<Spin> {
    match s {
        "plus" | "+" => Ok(Spin::Plus),
        "minus" | "-" => Ok(Spin::Minus),
        _ => Err(PyValueError::new_err(format!("spin must be 'plus' or 'minus', got {s:?}"))),
    }
}

#[pyclass(name = "WalkParameters", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyWalkParameters {
    inner: coin::WalkParameters,
}

#[pymethods]
impl PyWalkParameters {
    #[new]
    fn new(mass: f64, rho: f64) -> PyResult<Self> {
        coin::WalkParameters::new(mass, rho).map(|inner| Self { inner }).map_err(py_err)
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.inner.mass()
    }

    #[getter]
    fn rho(&self) -> f64 {
        self.inner.rho()
    }

    /// Non-negative exactly when a real coin exists.
    #[getter]
    fn solvability_margin(&self) -> f64 {
        self.inner.solvability_margin()
    }

    fn __repr__(&self) -> String {
        format!("WalkParameters(mass={}, rho={})", self.inner.mass(), self.inner.rho())
    }
}

#[pyclass(name = "Coin", frozen)]
struct PyCoin {
    params: coin::WalkParameters,
    inner: CoinCoefficients,
}

#[pymethods]
impl PyCoin {
    #[getter]
    fn r1(&self) -> f64 {
        self.inner.r1
    }
    #[getter]
    fn r2(&self) -> f64 {
        self.inner.r2
    }
    #[getter]
    fn g1(&self) -> Complex64 {
        self.inner.g1
    }
    #[getter]
    fn g2(&self) -> Complex64 {
        self.inner.g2
    }
    #[getter]
    fn f1(&self) -> Complex64 {
        self.inner.f1
    }
    #[getter]
    fn f2(&self) -> Complex64 {
        self.inner.f2
    }

    /// Named residuals of the unitarity conditions.
    fn residuals(&self) -> Vec<(String, f64)> {
        coin::verify_unitarity_system(&self.inner, &self.params).named()
    }

    fn __repr__(&self) -> String {
        format!("Coin(r1={}, r2={})", self.inner.r1, self.inner.r2)
    }
}

#[pyfunction]
fn solve_coefficients(params: &PyWalkParameters) -> PyResult<PyCoin> {
    let inner = coin::solve_coefficients(&params.inner).map_err(py_err)?;
    Ok(PyCoin {
        params: params.inner,
        inner,
    })
}

#[pyclass(name = "Simulation", frozen)]
struct PySimulation {
    #[pyo3(get)]
    n: usize,
    #[pyo3(get)]
    t: usize,
    #[pyo3(get)]
    conservation_drift: f64,
    /// `frames[k][x]` is total probability at site `x` after `k` steps.
    #[pyo3(get)]
    frames: Vec<Vec<f64>>,
    /// Final `(plus, minus)` amplitudes per site.
    #[pyo3(get)]
    final_amplitudes: Vec<(Complex64, Complex64)>,
}

#[pyfunction]
#[pyo3(signature = (params, n, t, init = "normalized", engine = "stencil"))]
fn simulate(params: &PyWalkParameters, n: usize, t: usize, init: &str, engine: &str) -> PyResult<PySimulation> {
    let mode = match init {
        "quarter" => InitMode::Quarter,
        "normalized" => InitMode::Normalized,
        _ => return Err(PyValueError::new_err(format!("unknown init {init:?}"))),
    };
    let engine = match engine {
        "stencil" => Engine::Stencil,
        "dense" => Engine::Dense,
        _ => return Err(PyValueError::new_err(format!("unknown engine {engine:?}"))),
    };
    let start = SpinorField::centered_initial_state(n, mode).map_err(py_err)?;
    let rec = evolve::simulate(&params.inner, n, t, &start, engine).map_err(py_err)?;
    Ok(PySimulation {
        n: rec.n,
        t: rec.t,
        conservation_drift: rec.conservation_drift,
        frames: rec.frames.iter().map(|f| f.total.clone()).collect(),
        final_amplitudes: rec.final_field.sites().iter().map(|s| (s.plus, s.minus)).collect(),
    })
}

/// `[(k, branch, eigenvalue)]` ordered by mode, then phase.
#[pyfunction]
fn eigenvalues(params: &PyWalkParameters, n: usize) -> PyResult<Vec<(usize, usize, Complex64)>> {
    let c = coin::solve_coefficients(&params.inner).map_err(py_err)?;
    let s = spectrum::spectrum(&c, &params.inner, n).map_err(py_err)?;
    Ok(s.eigenvalues.iter().map(|e| (e.k, e.branch, e.value)).collect())
}

/// `[(site, spin, amplitude, path_count)]` after `t` steps from one basis state.
#[pyfunction]
#[pyo3(signature = (params, t, n, site = 0, spin = "plus"))]
fn enumerate_paths(
    params: &PyWalkParameters,
    t: usize,
    n: usize,
    site: usize,
    spin: &str,
) -> PyResult<Vec<(usize, String, Complex64, u64)>> {
    let c = coin::solve_coefficients(&params.inner).map_err(py_err)?;
    let paths = pathsum::enumerate_paths(&c, &params.inner, t, n, site, parse_spin(spin)?).map_err(py_err)?;
    Ok(paths
        .into_iter()
        .map(|a| {
            let name = match a.spin {
                Spin::Plus => "plus",
                Spin::Minus => "minus",
            };
            (a.site, name.to_string(), a.amplitude, a.path_count)
        })
        .collect())
}

#[pyclass(name = "RefinementStudy", frozen)]
struct PyRefinementStudy {
    #[pyo3(get)]
    epsilons: Vec<f64>,
    #[pyo3(get)]
    pairwise_errors: Vec<f64>,
    #[pyo3(get)]
    estimated_order: Option<f64>,
    #[pyo3(get)]
    fit_r_squared: Option<f64>,
}

#[pyfunction]
#[pyo3(signature = (m, rho, final_time = 1.0, base_n = 64, levels = 4))]
fn run_refinement(m: f64, rho: f64, final_time: f64, base_n: usize, levels: usize) -> PyResult<PyRefinementStudy> {
    let s = convergence::run_refinement(m, rho, final_time, base_n, levels).map_err(py_err)?;
    Ok(PyRefinementStudy {
        epsilons: s.levels.iter().map(|l| l.epsilon).collect(),
        pairwise_errors: s.pairwise_errors,
        estimated_order: s.estimated_order,
        fit_r_squared: s.fit_r_squared,
    })
}

#[pymodule]
pub fn gdewalk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWalkParameters>()?;
    m.add_class::<PyCoin>()?;
    m.add_class::<PySimulation>()?;
    m.add_class::<PyRefinementStudy>()?;
    m.add_function(wrap_pyfunction!(solve_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_paths, m)?)?;
    m.add_function(wrap_pyfunction!(run_refinement, m)?)?;
    Ok(())
}

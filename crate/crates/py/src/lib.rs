//! Python bindings for the droplet evaporation core.

use std::path::PathBuf;

use droplet_evap::galerkin::{assemble, solve_massfrac, uniform_times, Coefficients, Nonlinearity, WeightedBasis};
use droplet_evap::hyperbolic::{
    self as hyp, example1_profiles, example2_profiles, EvalMode, Gamma, InvariantField, Profile, ReducedState,
    RiemannPair,
};
use droplet_evap::radius::{self, DropletParams, RadiusTrajectory};
use droplet_evap::scenario;
use droplet_evap::Error;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(droplet_evap_py, DropletError, PyException);
create_exception!(droplet_evap_py, ConfigError, DropletError);

fn err(e: Error) -> PyErr {
    match e {
        Error::ConfigInvalid(_) => ConfigError::new_err(e.to_string()),
        _ => DropletError::new_err(e.to_string()),
    }
}

fn make_gamma(g: f64) -> PyResult<Gamma> {
    Gamma::new(g).map_err(err)
}

fn to_json<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| DropletError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// `(W, Z)` from reduced density and velocity.
#[pyfunction]
fn to_riemann(rho: f64, v: f64, gamma: f64) -> PyResult<(f64, f64)> {
    let p = hyp::to_riemann(ReducedState { rho, v }, make_gamma(gamma)?);
    Ok((p.w, p.z))
}

/// `(rho, v)` from the Riemann invariants.
#[pyfunction]
fn from_riemann(w: f64, z: f64, gamma: f64) -> PyResult<(f64, f64)> {
    let s = hyp::from_riemann(RiemannPair { w, z }, make_gamma(gamma)?).map_err(err)?;
    Ok((s.rho, s.v))
}

#[pyfunction]
fn char_speeds(w: f64, z: f64, gamma: f64) -> PyResult<(f64, f64)> {
    Ok(hyp::char_speeds(RiemannPair { w, z }, make_gamma(gamma)?))
}

/// Gas field given by the initial Riemann invariants.
#[pyclass(frozen, module = "droplet_evap_py")]
struct Field {
    inner: InvariantField,
}

#[pymethods]
impl Field {
    #[staticmethod]
    fn example1() -> Self {
        Self { inner: example1_profiles() }
    }

    #[staticmethod]
    #[pyo3(signature = (c1 = 35.0, t0 = 373.0))]
    fn example2(c1: f64, t0: f64) -> PyResult<Self> {
        Ok(Self { inner: example2_profiles(c1, 348.0 / t0).map_err(err)? })
    }

    /// Polynomial profiles given by coefficient lists in increasing degree.
    #[staticmethod]
    #[pyo3(signature = (w0, z0, gamma = 3.0, iterative = false))]
    fn polynomial(w0: Vec<f64>, z0: Vec<f64>, gamma: f64, iterative: bool) -> PyResult<Self> {
        let mode = if iterative { EvalMode::GeneralIterative } else { EvalMode::Gamma3Closed };
        let inner =
            InvariantField::new(Profile::polynomial(w0), Profile::polynomial(z0), make_gamma(gamma)?, mode).map_err(err)?;
        Ok(Self { inner })
    }

    fn invariants(&self, t: f64, r: f64) -> PyResult<(f64, f64)> {
        let p = self.inner.eval_invariants(t, r, 1e-12).map_err(err)?;
        Ok((p.w, p.z))
    }

    /// `(rho_G, v_G)` at `(t, r)`.
    fn gas(&self, t: f64, r: f64) -> PyResult<(f64, f64)> {
        let g = self.inner.gas_field(t, r).map_err(err)?;
        Ok((g.rho_g, g.v_g))
    }

    /// `inf` when no focusing is found.
    fn blowup_time(&self) -> f64 {
        self.inner.blowup_time()
    }
}

#[pyclass(frozen, module = "droplet_evap_py")]
struct Trajectory {
    inner: RadiusTrajectory,
}

#[pymethods]
impl Trajectory {
    #[getter]
    fn t(&self) -> Vec<f64> {
        self.inner.times()
    }

    #[getter]
    fn r(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.r).collect()
    }

    #[getter]
    fn drdt(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.drdt).collect()
    }

    #[getter]
    fn termination(&self) -> String {
        format!("{:?}", self.inner.termination)
    }

    fn d2(&self) -> Vec<f64> {
        radius::d2_curve(&self.inner).into_iter().map(|p| p.1).collect()
    }

    /// List of `(start, end, kind)`.
    #[pyo3(signature = (slope_tol = 1e-9))]
    fn monotonicity(&self, slope_tol: f64) -> PyResult<Vec<(f64, f64, String)>> {
        let segs = radius::classify_monotonicity(&self.inner, slope_tol).map_err(err)?;
        Ok(segs.into_iter().map(|s| (s.start, s.end, format!("{:?}", s.kind))).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.samples.len()
    }
}

#[pyfunction]
#[pyo3(signature = (field, rho_l, r0 = 1.0, t_end = 1.0, h = 0.05))]
fn integrate_radius(field: &Field, rho_l: f64, r0: f64, t_end: f64, h: f64) -> PyResult<Trajectory> {
    let params = DropletParams::new(rho_l, r0).map_err(err)?;
    Ok(Trajectory { inner: radius::integrate_radius(&field.inner, &params, t_end, h).map_err(err)? })
}

/// Piecewise linear profile through equally spaced samples on `[0, 1]`.
fn sampled_profile(values: Vec<f64>) -> PyResult<Profile> {
    if values.len() < 2 {
        return Err(DropletError::new_err("u0 needs at least two samples"));
    }
    let n = (values.len() - 1) as f64;
    let vals = std::sync::Arc::new(values);
    let locate = move |x: f64| {
        let s = (x.clamp(0.0, 1.0) * n).min(n - 1e-12);
        let j = s.floor() as usize;
        (j, s - j as f64)
    };
    let (v, d) = (vals.clone(), vals);
    Ok(Profile::new(
        "sampled",
        move |x| {
            let (j, w) = locate(x);
            v[j] + w * (v[j + 1] - v[j])
        },
        move |x| {
            let (j, _) = locate(x);
            (d[j + 1] - d[j]) * n
        },
        (0.0, 1.0),
    ))
}

/// Mass fraction with constant coefficients `a`, `k`, `R'/R = q` and
/// `f(u) = c u |u|^(p-2)` (`c = 0` for no source). `u0` holds equally spaced
/// samples on `[0, 1]`.
#[pyfunction]
#[pyo3(signature = (n, t_end, dt, u0, a = 1.0, k = 1.0, q = 0.0, c = 0.0, p = 2.0))]
#[allow(clippy::too_many_arguments)]
fn solve_constant_massfrac<'py>(
    py: Python<'py>,
    n: usize,
    t_end: f64,
    dt: f64,
    u0: Vec<f64>,
    a: f64,
    k: f64,
    q: f64,
    c: f64,
    p: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let ops = assemble(&WeightedBasis::p1(n).map_err(err)?, 4).map_err(err)?;
    let f = if c == 0.0 { Nonlinearity::zero() } else { Nonlinearity::power(c, p) };
    let sched = Coefficients { a, k, r_over_r: q };
    let sol = solve_massfrac(&ops, &uniform_times(t_end, dt), &sched, &f, &sampled_profile(u0)?).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("nodes", ops.basis.nodes().to_vec())?;
    out.set_item("times", sol.times.clone())?;
    out.set_item("norm0", sol.norm0_series())?;
    out.set_item("sup_abs", sol.sup_abs())?;
    out.set_item("coefficients", sol.coefficients.clone())?;
    Ok(out)
}

#[pyfunction]
fn dump_preset(name: &str) -> PyResult<&'static str> {
    scenario::preset(name).ok_or_else(|| ConfigError::new_err(format!("unknown preset {name}")))
}

/// Assumption checks and notes for a TOML scenario text.
#[pyfunction]
fn validate_config<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyDict>> {
    let v = scenario::parse_config(text).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("name", &v.config.name)?;
    out.set_item("checks", to_json(py, &v.checks)?)?;
    out.set_item("notes", v.notes.clone())?;
    Ok(out)
}

/// Runs a TOML scenario, writing artifacts to `out_dir`; returns the report.
#[pyfunction]
fn run_config<'py>(py: Python<'py>, text: &str, out_dir: PathBuf) -> PyResult<Bound<'py, PyAny>> {
    let v = scenario::parse_config(text).map_err(err)?;
    let report = py.detach(|| scenario::run_scenario(&v, &out_dir)).map_err(err)?;
    to_json(py, &report)
}

#[pymodule]
fn droplet_evap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DropletError", m.py().get_type::<DropletError>())?;
    m.add("ConfigError", m.py().get_type::<ConfigError>())?;
    m.add_class::<Field>()?;
    m.add_class::<Trajectory>()?;
    m.add_function(wrap_pyfunction!(to_riemann, m)?)?;
    m.add_function(wrap_pyfunction!(from_riemann, m)?)?;
    m.add_function(wrap_pyfunction!(char_speeds, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_radius, m)?)?;
    m.add_function(wrap_pyfunction!(solve_constant_massfrac, m)?)?;
    m.add_function(wrap_pyfunction!(dump_preset, m)?)?;
    m.add_function(wrap_pyfunction!(validate_config, m)?)?;
    m.add_function(wrap_pyfunction!(run_config, m)?)?;
    Ok(())
}

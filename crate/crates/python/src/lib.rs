//! Python bindings. Configurations and orientations are passed as the same
//! short labels the command line uses (`"cp"`, `"perp"`, ...).

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use slabqed::modes::{self, ModeIndex, Polarization, Slab};
use slabqed::oracle::{self, QuadratureSpec};
use slabqed::{rates, DipoleOrientation, Error, Geometry, PlateConfiguration};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NonConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn config(label: &str) -> PyResult<PlateConfiguration> {
    label.parse().map_err(PyValueError::new_err)
}

fn orientation(label: &str) -> PyResult<DipoleOrientation> {
    label.parse().map_err(PyValueError::new_err)
}

fn polarization(label: &str) -> PyResult<Polarization> {
    match label.to_ascii_lowercase().as_str() {
        "te" => Ok(Polarization::TE),
        "tm" => Ok(Polarization::TM),
        other => Err(PyValueError::new_err(format!("unknown polarization '{other}' (expected te or tm)"))),
    }
}

/// Rate ratios for one orientation; `iso_ratio` is the orientation-weighted total.
#[pyclass(name = "RateRatios", frozen, get_all)]
struct PyRateRatios {
    perp_ratio: f64,
    par_ratio: f64,
    iso_ratio: f64,
}

#[pymethods]
impl PyRateRatios {
    fn __repr__(&self) -> String {
        format!(
            "RateRatios(perp_ratio={}, par_ratio={}, iso_ratio={})",
            self.perp_ratio, self.par_ratio, self.iso_ratio
        )
    }
}

#[pyclass(name = "SuppressionReport", frozen, get_all)]
struct PySuppressionReport {
    config: String,
    orientation: String,
    threshold_l: Option<f64>,
    numeric_l: Option<f64>,
    zero_for_all_s: bool,
}

#[pymethods]
impl PySuppressionReport {
    fn has_window(&self) -> bool {
        self.threshold_l.is_some()
    }

    fn __repr__(&self) -> String {
        format!(
            "SuppressionReport(config='{}', orientation='{}', threshold_l={:?}, numeric_l={:?}, zero_for_all_s={})",
            self.config, self.orientation, self.threshold_l, self.numeric_l, self.zero_for_all_s
        )
    }
}

#[pyclass(name = "FreeSpaceRates", frozen, get_all)]
struct PyFreeSpaceRates {
    par: f64,
    perp: f64,
    total: f64,
}

/// Brute-force mode-sum integrator with a cached free-space normalization.
#[pyclass(name = "Oracle", frozen)]
struct PyOracle(oracle::Oracle);

#[pymethods]
impl PyOracle {
    #[new]
    #[pyo3(signature = (k_max=None, radial=None, angular=None, delta_width=None))]
    fn new(k_max: Option<f64>, radial: Option<usize>, angular: Option<usize>, delta_width: Option<f64>) -> PyResult<Self> {
        let d = QuadratureSpec::default();
        let spec = QuadratureSpec::new(
            k_max.unwrap_or(d.k_max),
            radial.unwrap_or(d.radial),
            angular.unwrap_or(d.angular),
            delta_width.unwrap_or(d.delta_width),
        )
        .map_err(to_py)?;
        oracle::Oracle::new(spec).map(Self).map_err(to_py)
    }

    #[pyo3(signature = (config, l, s, orientation="iso"))]
    fn ratio(&self, py: Python<'_>, config: &str, l: f64, s: f64, orientation: &str) -> PyResult<f64> {
        let (c, o) = (self::config(config)?, self::orientation(orientation)?);
        py.detach(|| self.0.ratio(c, l, s, o)).map_err(to_py)
    }
}

#[pyfunction]
fn perp_ratio(config: &str, l: f64, s: f64) -> PyResult<f64> {
    rates::perp_ratio(self::config(config)?, l, s).map_err(to_py)
}

#[pyfunction]
fn par_ratio(config: &str, l: f64, s: f64) -> PyResult<f64> {
    rates::par_ratio(self::config(config)?, l, s).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (config, l, s, orientation="iso"))]
fn total_ratio(config: &str, l: f64, s: f64, orientation: &str) -> PyResult<PyRateRatios> {
    let r = rates::total_ratio(self::config(config)?, l, s, self::orientation(orientation)?).map_err(to_py)?;
    Ok(PyRateRatios {
        perp_ratio: r.perp_ratio,
        par_ratio: r.par_ratio,
        iso_ratio: r.iso_ratio,
    })
}

#[pyfunction]
#[pyo3(signature = (config, l, orientation="iso"))]
fn slab_average(config: &str, l: f64, orientation: &str) -> PyResult<f64> {
    rates::slab_average(self::config(config)?, l, self::orientation(orientation)?).map_err(to_py)
}

#[pyfunction]
fn suppression_threshold(config: &str, orientation: &str) -> PyResult<PySuppressionReport> {
    let r = rates::suppression_threshold(self::config(config)?, self::orientation(orientation)?).map_err(to_py)?;
    Ok(PySuppressionReport {
        config: r.config.to_string(),
        orientation: r.orientation.to_string(),
        threshold_l: r.threshold_l,
        numeric_l: r.numeric_l,
        zero_for_all_s: r.zero_for_all_s,
    })
}

/// Free-space Einstein coefficient in 1/s (Gaussian units).
#[pyfunction]
fn free_space_rate(omega0: f64, d_par_sq: f64, d_perp_sq: f64) -> PyResult<PyFreeSpaceRates> {
    let t = slabqed::Transition::new(omega0, d_par_sq, d_perp_sq).map_err(to_py)?;
    let r = rates::free_space_rate(&t);
    Ok(PyFreeSpaceRates {
        par: r.par,
        perp: r.perp,
        total: r.total,
    })
}

#[pyfunction]
fn max_mode_index(config: &str, l: f64) -> PyResult<i64> {
    Ok(modes::max_mode_index(self::config(config)?, l))
}

/// Reduced vector potential `(A_x, A_y, A_z)` of one mode at `position`.
#[pyfunction]
fn mode_profile(
    config: &str,
    separation: f64,
    k_par: [f64; 2],
    n: u32,
    pol: &str,
    position: [f64; 3],
) -> PyResult<[Complex64; 3]> {
    let slab = Slab::new(self::config(config)?, separation).map_err(to_py)?;
    modes::mode_profile(&slab, &ModeIndex::new(k_par, n, polarization(pol)?), position).map_err(to_py)
}

/// Largest violation of the plate boundary conditions for one mode.
#[pyfunction]
fn boundary_residual(config: &str, separation: f64, k_par: [f64; 2], n: u32, pol: &str) -> PyResult<f64> {
    let slab = Slab::new(self::config(config)?, separation).map_err(to_py)?;
    modes::boundary_residual(&slab, &ModeIndex::new(k_par, n, polarization(pol)?)).map_err(to_py)
}

/// One-shot brute-force ratio with the default quadrature.
#[pyfunction]
#[pyo3(signature = (config, l, s, orientation="iso"))]
fn bruteforce_ratio(py: Python<'_>, config: &str, l: f64, s: f64, orientation: &str) -> PyResult<f64> {
    let (c, o) = (self::config(config)?, self::orientation(orientation)?);
    py.detach(|| oracle::bruteforce_ratio(c, l, s, o, &QuadratureSpec::default()))
        .map_err(to_py)
}

/// Maps a configuration and position onto the canonical CC/CP/PP form.
#[pyfunction]
fn canonicalize(config: &str, l: f64, s: f64) -> PyResult<(String, f64, f64)> {
    let g = Geometry::new(l, s).map_err(to_py)?;
    let (c, g) = slabqed::canonicalize(self::config(config)?, g);
    Ok((c.to_string(), g.l(), g.s()))
}

#[pymodule]
#[pyo3(name = "slabqed")]
fn slabqed_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRateRatios>()?;
    m.add_class::<PySuppressionReport>()?;
    m.add_class::<PyFreeSpaceRates>()?;
    m.add_class::<PyOracle>()?;
    m.add_function(wrap_pyfunction!(perp_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(par_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(total_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(slab_average, m)?)?;
    m.add_function(wrap_pyfunction!(suppression_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(free_space_rate, m)?)?;
    m.add_function(wrap_pyfunction!(max_mode_index, m)?)?;
    m.add_function(wrap_pyfunction!(mode_profile, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_residual, m)?)?;
    m.add_function(wrap_pyfunction!(bruteforce_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    Ok(())
}

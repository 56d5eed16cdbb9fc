//! Python bindings for relaycover.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use relaycover::channel::{self, ChainPowers, Direction};
use relaycover::fadingsim::{self, SimConfig};
use relaycover::scenario::ScenarioFile;
use relaycover::{geometry, planner, relay_opt, CoverError, Scheme};

create_exception!(relaycover_py, InfeasibleError, PyValueError);

fn err(e: CoverError) -> PyErr {
    if e.is_infeasible() {
        InfeasibleError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn scheme(s: &str) -> PyResult<Scheme> {
    s.parse::<Scheme>()
        .map_err(|_| PyValueError::new_err(format!("scheme must be 'td' or 'fd', got {s:?}")))
}

#[pyclass(name = "RadioEnvironment", frozen, from_py_object)]
#[derive(Clone)]
struct PyEnv(channel::RadioEnvironment);

#[pymethods]
impl PyEnv {
    #[new]
    #[pyo3(signature = (pathloss_const_db=-15.3, pathloss_exponent=3.76, noise_psd_dbm_per_hz=-174.0, bandwidth_hz=9e6))]
    fn new(
        pathloss_const_db: f64,
        pathloss_exponent: f64,
        noise_psd_dbm_per_hz: f64,
        bandwidth_hz: f64,
    ) -> PyResult<Self> {
        channel::RadioEnvironment::new(
            pathloss_const_db,
            pathloss_exponent,
            noise_psd_dbm_per_hz,
            bandwidth_hz,
        )
        .map(PyEnv)
        .map_err(err)
    }

    #[getter]
    fn pathloss_exponent(&self) -> f64 {
        self.0.pathloss_exponent
    }

    #[getter]
    fn bandwidth_hz(&self) -> f64 {
        self.0.bandwidth_hz
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(name = "QosSpec", frozen, from_py_object)]
#[derive(Clone)]
struct PyQos(channel::QosSpec);

#[pymethods]
impl PyQos {
    #[new]
    #[pyo3(signature = (rate_fwd_bps=2e6, rate_bwd_bps=2e6, snr_fwd_db=20.0, snr_bwd_db=20.0))]
    fn new(
        rate_fwd_bps: f64,
        rate_bwd_bps: f64,
        snr_fwd_db: f64,
        snr_bwd_db: f64,
    ) -> PyResult<Self> {
        channel::QosSpec::new(rate_fwd_bps, rate_bwd_bps, snr_fwd_db, snr_bwd_db)
            .map(PyQos)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(name = "DevicePowers", frozen, from_py_object)]
#[derive(Clone)]
struct PyDevices(channel::DevicePowers);

#[pymethods]
impl PyDevices {
    #[new]
    #[pyo3(signature = (bs_dbm=20.0, relay_dbm=17.0, dest_dbm=14.0))]
    fn new(bs_dbm: f64, relay_dbm: f64, dest_dbm: f64) -> PyResult<Self> {
        channel::DevicePowers::from_dbm(bs_dbm, relay_dbm, dest_dbm)
            .map(PyDevices)
            .map_err(err)
    }

    /// Base station at `p_dbm`, relays 3 dB and the destination 6 dB below.
    #[staticmethod]
    fn ladder(p_dbm: f64) -> Self {
        PyDevices(channel::DevicePowers::ladder(p_dbm))
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(name = "ReachResult", frozen, skip_from_py_object)]
struct PyReach(relay_opt::ReachResult);

#[pymethods]
impl PyReach {
    /// Hop lengths in meters, base station first.
    #[getter]
    fn distances(&self) -> Vec<f64> {
        self.0.tuple.d.clone()
    }

    #[getter]
    fn total(&self) -> f64 {
        self.0.tuple.total
    }

    #[getter]
    fn relay_offsets(&self) -> Vec<f64> {
        self.0.tuple.relay_offsets()
    }

    /// `(lambda, nu)`.
    #[getter]
    fn multipliers(&self) -> (f64, f64) {
        (self.0.multipliers.lambda, self.0.multipliers.nu)
    }

    /// Which budgets bind: "forward", "backward" or "both".
    #[getter]
    fn binding(&self) -> &'static str {
        match self.0.kkt_case {
            relay_opt::KktCase::NuOnly => "backward",
            relay_opt::KktCase::LambdaOnly => "forward",
            relay_opt::KktCase::Both => "both",
        }
    }

    /// `(b, c)`.
    #[getter]
    fn budgets(&self) -> (f64, f64) {
        (self.0.budgets.b, self.0.budgets.c)
    }

    fn __repr__(&self) -> String {
        format!(
            "ReachResult(total={}, distances={:?})",
            self.0.tuple.total, self.0.tuple.d
        )
    }
}

#[pyclass(name = "Polygon", frozen, from_py_object)]
#[derive(Clone)]
struct PyPolygon(geometry::Polygon);

#[pymethods]
impl PyPolygon {
    #[new]
    fn new(vertices: Vec<(f64, f64)>) -> PyResult<Self> {
        let coords: Vec<[f64; 2]> = vertices.into_iter().map(|(x, y)| [x, y]).collect();
        geometry::Polygon::from_coords(&coords)
            .map(PyPolygon)
            .map_err(err)
    }

    #[getter]
    fn vertices(&self) -> Vec<(f64, f64)> {
        self.0
            .input_order()
            .into_iter()
            .map(|p| (p.x, p.y))
            .collect()
    }

    #[getter]
    fn is_convex(&self) -> bool {
        self.0.is_convex()
    }

    #[getter]
    fn diameter(&self) -> f64 {
        self.0.diameter()
    }

    /// "interior", "boundary" or "exterior".
    fn classify(&self, x: f64, y: f64) -> &'static str {
        match self.0.classify_point(geometry::Point::new(x, y)) {
            geometry::RegionClass::Interior => "interior",
            geometry::RegionClass::Boundary => "boundary",
            geometry::RegionClass::Exterior => "exterior",
        }
    }
}

type DiskTuple = ((f64, f64), f64);

fn disk_tuple(d: geometry::Disk) -> DiskTuple {
    ((d.center.x, d.center.y), d.radius)
}

/// Optimal chain with `relays` relays under the role-based power mapping.
#[pyfunction]
#[pyo3(signature = (env, qos, devices, scheme="td", relays=1))]
fn solve_relays(
    env: &PyEnv,
    qos: &PyQos,
    devices: &PyDevices,
    scheme: &str,
    relays: usize,
) -> PyResult<PyReach> {
    relay_opt::solve_for_relays(&env.0, &qos.0, &devices.0, self::scheme(scheme)?, relays)
        .map(PyReach)
        .map_err(err)
}

/// Optimal chain for explicit per-link powers in watts.
#[pyfunction]
#[pyo3(signature = (env, qos, fwd_watts, bwd_watts, scheme="td"))]
fn solve_chain(
    env: &PyEnv,
    qos: &PyQos,
    fwd_watts: Vec<f64>,
    bwd_watts: Vec<f64>,
    scheme: &str,
) -> PyResult<PyReach> {
    let powers = ChainPowers::new(fwd_watts, bwd_watts).map_err(err)?;
    relay_opt::solve_optimal_distances(&env.0, &qos.0, &powers, self::scheme(scheme)?)
        .map(PyReach)
        .map_err(err)
}

/// `(best_relays, max_reach, totals)` where `totals[k]` is the reach with `k` relays.
#[pyfunction]
#[pyo3(signature = (env, qos, devices, scheme="td"))]
fn sweep(
    env: &PyEnv,
    qos: &PyQos,
    devices: &PyDevices,
    scheme: &str,
) -> PyResult<(usize, f64, Vec<f64>)> {
    let s = relay_opt::best_relay_count(&env.0, &qos.0, &devices.0, self::scheme(scheme)?)
        .map_err(err)?;
    let totals = s.rows.iter().map(|r| r.total()).collect();
    Ok((s.best_relays, s.max_reach, totals))
}

#[pyfunction]
fn max_relay_count(env: &PyEnv, qos: &PyQos) -> PyResult<usize> {
    relay_opt::max_relay_count(&env.0, &qos.0).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (env, qos, devices, scheme="td"))]
fn coverage_radius(env: &PyEnv, qos: &PyQos, devices: &PyDevices, scheme: &str) -> PyResult<f64> {
    planner::coverage_radius(&env.0, &qos.0, &devices.0, self::scheme(scheme)?).map_err(err)
}

/// `((x, y), radius)` of the smallest disk covering the polygon.
#[pyfunction]
fn min_enclosing_disk(polygon: &PyPolygon) -> DiskTuple {
    disk_tuple(geometry::min_enclosing_disk(&polygon.0))
}

/// Like `min_enclosing_disk` with the center kept outside or on the boundary.
#[pyfunction]
fn constrained_min_enclosing_disk(polygon: &PyPolygon) -> DiskTuple {
    disk_tuple(geometry::constrained_min_enclosing_disk(&polygon.0))
}

/// `(forward, backward)` outage probabilities for a chain of hop lengths.
#[pyfunction]
#[pyo3(signature = (env, qos, devices, distances, scheme="td"))]
fn outage_probability(
    env: &PyEnv,
    qos: &PyQos,
    devices: &PyDevices,
    distances: Vec<f64>,
    scheme: &str,
) -> PyResult<(f64, f64)> {
    let s = self::scheme(scheme)?;
    let powers = devices.0.chain(distances.len()).map_err(err)?;
    let f = channel::outage_probability(&env.0, &powers, &distances, &qos.0, s, Direction::Forward)
        .map_err(err)?;
    let b =
        channel::outage_probability(&env.0, &powers, &distances, &qos.0, s, Direction::Backward)
            .map_err(err)?;
    Ok((f, b))
}

/// Monte Carlo outage estimate; returns a dict keyed by direction.
#[pyfunction]
#[pyo3(signature = (env, qos, devices, distances, scheme="td", trials=100_000, seed=1))]
#[allow(clippy::too_many_arguments)]
fn simulate<'py>(
    py: Python<'py>,
    env: &PyEnv,
    qos: &PyQos,
    devices: &PyDevices,
    distances: Vec<f64>,
    scheme: &str,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let config = SimConfig {
        trials,
        seed,
        env: env.0,
        powers: devices.0.chain(distances.len()).map_err(err)?,
        distances,
        qos: qos.0,
        scheme: self::scheme(scheme)?,
    };
    let report = py.detach(|| fadingsim::estimate(&config)).map_err(err)?;
    let out = PyDict::new(py);
    for (name, e) in [("forward", report.forward), ("backward", report.backward)] {
        let d = PyDict::new(py);
        d.set_item("empirical", e.empirical)?;
        d.set_item("std_error", e.std_error)?;
        d.set_item("analytic", e.analytic)?;
        d.set_item("z_score", e.z_score)?;
        d.set_item("empirical_rate_bps", e.empirical_rate_bps)?;
        d.set_item("analytic_rate_bps", e.analytic_rate_bps)?;
        out.set_item(name, d)?;
    }
    Ok(out)
}

/// Plans a deployment from a JSON scenario document and returns the plan as JSON.
#[pyfunction]
fn plan_json(scenario: &str) -> PyResult<String> {
    let file = ScenarioFile::from_json(scenario).map_err(err)?;
    let plan = planner::plan(&file.to_scenario().map_err(err)?).map_err(err)?;
    serde_json::to_string(&plan).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn relaycover_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("InfeasibleError", m.py().get_type::<InfeasibleError>())?;
    m.add_class::<PyEnv>()?;
    m.add_class::<PyQos>()?;
    m.add_class::<PyDevices>()?;
    m.add_class::<PyReach>()?;
    m.add_class::<PyPolygon>()?;
    m.add_function(wrap_pyfunction!(solve_relays, m)?)?;
    m.add_function(wrap_pyfunction!(solve_chain, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(max_relay_count, m)?)?;
    m.add_function(wrap_pyfunction!(coverage_radius, m)?)?;
    m.add_function(wrap_pyfunction!(min_enclosing_disk, m)?)?;
    m.add_function(wrap_pyfunction!(constrained_min_enclosing_disk, m)?)?;
    m.add_function(wrap_pyfunction!(outage_probability, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(plan_json, m)?)?;
    Ok(())
}

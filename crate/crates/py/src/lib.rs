//! Python module `steering`.
//!
//! Validation failures raise `ValueError`; capacity limits raise
//! `steering.CapacityError` (a `ValueError` subclass).

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use steering_core::hemisphere::{self as hemi, HemisphereConfig};
use steering_core::optimizer::{self as opt, AnnealingConfig};
use steering_core::qstate::{self, DensityMatrix};
use steering_core::violation::{self, ViolationResult};
use steering_core::{golden, io, lhsbound, SteeringError};

pyo3::create_exception!(steering, CapacityError, PyValueError);

fn py_err(e: SteeringError) -> PyErr {
    if e.is_capacity() {
        CapacityError::new_err(e.to_string())
    } else if matches!(e, SteeringError::Io(_)) {
        PyIOError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for steering_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// Ordered list of unit measurement directions.
#[pyclass(name = "MeasurementSet", module = "steering", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PySet {
    inner: lhsbound::MeasurementSet,
}

#[pymethods]
impl PySet {
    /// Rows must be unit vectors within 1e-12 unless `normalize` is true.
    #[new]
    #[pyo3(signature = (directions, label = "set".to_string(), normalize = false))]
    fn new(directions: Vec<[f64; 3]>, label: String, normalize: bool) -> PyResult<Self> {
        let inner = if normalize {
            lhsbound::MeasurementSet::from_rows_normalized(label, &directions).py()?.0
        } else {
            lhsbound::MeasurementSet::from_rows(label, &directions).py()?
        };
        Ok(PySet { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySet {
            inner: io::set_from_json(text).py()?.0,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        io::set_to_json(&self.inner).py()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    #[getter]
    fn directions(&self) -> Vec<[f64; 3]> {
        self.inner.rows()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("MeasurementSet(label={:?}, n={})", self.inner.label(), self.inner.len())
    }
}

#[pyclass(name = "BoundResult", module = "steering", frozen, get_all)]
pub struct PyBound {
    value: f64,
    signs: Vec<i8>,
    resultant: [f64; 3],
}

#[pymethods]
impl PyBound {
    fn __repr__(&self) -> String {
        format!("BoundResult(value={}, signs={:?})", self.value, self.signs)
    }
}

/// Two-qubit density matrix in the |00>,|01>,|10>,|11> basis.
#[pyclass(name = "DensityMatrix", module = "steering", frozen)]
pub struct PyState {
    inner: DensityMatrix,
}

#[pymethods]
impl PyState {
    /// Real and imaginary parts as 4x4 nested lists.
    #[new]
    fn new(re: [[f64; 4]; 4], im: [[f64; 4]; 4]) -> PyResult<Self> {
        Ok(PyState {
            inner: io::StateFile { re, im }.into_state().py()?,
        })
    }

    #[getter]
    fn re(&self) -> [[f64; 4]; 4] {
        io::StateFile::from(&self.inner).re
    }

    #[getter]
    fn im(&self) -> [[f64; 4]; 4] {
        io::StateFile::from(&self.inner).im
    }

    fn purity(&self) -> f64 {
        self.inner.purity()
    }

    /// Smallest eigenvalue of the partial transpose (negative => entangled).
    fn min_pt_eigenvalue(&self) -> PyResult<f64> {
        qstate::min_eigenvalue(&qstate::partial_transpose(&self.inner)).py()
    }

    /// T_ij = Tr(rho sigma_i (x) sigma_j).
    fn correlation_matrix(&self) -> [[f64; 3]; 3] {
        qstate::correlation_matrix(&self.inner).t
    }
}

#[pyclass(name = "ViolationResult", module = "steering", frozen, get_all)]
pub struct PyViolation {
    quantum_value: f64,
    lhs_bound: f64,
    detected: bool,
    margin: f64,
    alice_directions: Option<Vec<[f64; 3]>>,
}

impl From<ViolationResult> for PyViolation {
    fn from(r: ViolationResult) -> Self {
        PyViolation {
            quantum_value: r.quantum_value,
            lhs_bound: r.lhs_bound,
            detected: r.detected,
            margin: r.margin,
            alice_directions: r.alice_directions.map(|d| d.iter().map(|u| u.vec().to_array()).collect()),
        }
    }
}

#[pymethods]
impl PyViolation {
    fn __repr__(&self) -> String {
        format!(
            "ViolationResult(quantum_value={}, lhs_bound={}, detected={})",
            self.quantum_value, self.lhs_bound, self.detected
        )
    }
}

#[pyclass(name = "OptimizationResult", module = "steering", frozen, get_all)]
pub struct PyOptimization {
    best_set: PySet,
    best_bound: f64,
    history: Vec<(usize, f64)>,
    evaluations: u64,
}

impl From<opt::OptimizationResult> for PyOptimization {
    fn from(r: opt::OptimizationResult) -> Self {
        PyOptimization {
            best_set: PySet { inner: r.best_set },
            best_bound: r.best_bound,
            history: r.history,
            evaluations: r.evaluations,
        }
    }
}

#[pyfunction]
fn lhs_bound(set: &PySet) -> PyResult<PyBound> {
    let r = lhsbound::lhs_bound(&set.inner).py()?;
    Ok(PyBound {
        value: r.value,
        signs: r.signs,
        resultant: r.resultant,
    })
}

/// Bound via the largest eigenvalue of each sign assignment's operator.
#[pyfunction]
fn lhs_bound_eig(set: &PySet) -> PyResult<f64> {
    lhsbound::lhs_bound_eig(&set.inner).py()
}

#[pyfunction]
fn canonicalize(set: &PySet) -> PyResult<PySet> {
    Ok(PySet {
        inner: lhsbound::canonicalize(&set.inner).py()?,
    })
}

/// Built-in published set by key, e.g. "table2-n6" or "sm-n20".
#[pyfunction]
fn golden_set(key: &str) -> PyResult<PySet> {
    let g = golden::lookup(key).ok_or_else(|| PyValueError::new_err(format!("unknown set '{key}'")))?;
    Ok(PySet {
        inner: g.measurement_set().py()?.0,
    })
}

#[pyfunction]
fn golden_keys() -> Vec<String> {
    golden::all_sets().iter().map(|g| g.key()).collect()
}

#[pyfunction]
fn random_set(n: usize, seed: u64) -> PyResult<PySet> {
    Ok(PySet {
        inner: opt::random_set(n, seed).py()?,
    })
}

/// Simulated annealing with the default schedule for `n`; keyword
/// arguments override individual fields.
#[pyfunction]
#[pyo3(signature = (n, seed = 1, restarts = None, cooling = None, sweeps_per_temperature = None, refine_iterations = None))]
fn anneal(
    py: Python<'_>,
    n: usize,
    seed: u64,
    restarts: Option<usize>,
    cooling: Option<f64>,
    sweeps_per_temperature: Option<usize>,
    refine_iterations: Option<usize>,
) -> PyResult<PyOptimization> {
    let mut c = AnnealingConfig::new(n, seed);
    c.restarts = restarts.unwrap_or(c.restarts);
    c.cooling = cooling.unwrap_or(c.cooling);
    c.sweeps_per_temperature = sweeps_per_temperature.unwrap_or(c.sweeps_per_temperature);
    c.refine_iterations = refine_iterations.unwrap_or(c.refine_iterations);
    let r = py.detach(|| opt::anneal_parallel(&c)).py()?;
    Ok(r.into())
}

#[pyfunction]
#[pyo3(signature = (set, iterations = 2000))]
fn refine(set: &PySet, iterations: usize) -> PyResult<PyOptimization> {
    Ok(opt::refine(&set.inner, iterations).py()?.into())
}

#[pyfunction]
fn make_werner(v: f64) -> PyResult<PyState> {
    Ok(PyState {
        inner: qstate::make_werner(v).py()?,
    })
}

#[pyfunction]
fn make_generalized_werner(v: f64, theta: f64) -> PyResult<PyState> {
    Ok(PyState {
        inner: qstate::make_generalized_werner(v, theta).py()?,
    })
}

#[pyfunction]
fn make_mems(gamma: f64) -> PyResult<PyState> {
    Ok(PyState {
        inner: qstate::make_mems(gamma).py()?,
    })
}

#[pyfunction]
fn make_avn(v: f64, theta: f64) -> PyResult<PyState> {
    Ok(PyState {
        inner: qstate::make_avn(v, theta).py()?,
    })
}

#[pyfunction]
fn max_quantum_value(rho: &PyState, bob: &PySet) -> PyViolation {
    violation::max_quantum_value(&rho.inner, &bob.inner).into()
}

#[pyfunction]
fn detect(rho: &PyState, bob: &PySet) -> PyResult<PyViolation> {
    Ok(violation::detect(&rho.inner, &bob.inner).py()?.into())
}

/// Rounded hemisphere set with `n` band parameter and density `density`.
#[pyfunction]
fn hemisphere_set(n: usize, density: f64) -> PyResult<PySet> {
    let hs = hemi::build_hemisphere_set(&HemisphereConfig::new(n, density)).py()?;
    Ok(PySet { inner: hs.set })
}

#[pyfunction]
fn hemisphere_all_ones_bound(n: usize, density: f64) -> PyResult<f64> {
    let hs = hemi::build_hemisphere_set(&HemisphereConfig::new(n, density)).py()?;
    Ok(hemi::all_ones_bound(&hs))
}

#[pyfunction]
fn analytic_bound(n: usize) -> PyResult<f64> {
    hemi::analytic_bound(n).py()
}

#[pymodule]
fn steering(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    m.add_class::<PySet>()?;
    m.add_class::<PyBound>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyViolation>()?;
    m.add_class::<PyOptimization>()?;
    m.add_function(wrap_pyfunction!(lhs_bound, m)?)?;
    m.add_function(wrap_pyfunction!(lhs_bound_eig, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(golden_set, m)?)?;
    m.add_function(wrap_pyfunction!(golden_keys, m)?)?;
    m.add_function(wrap_pyfunction!(random_set, m)?)?;
    m.add_function(wrap_pyfunction!(anneal, m)?)?;
    m.add_function(wrap_pyfunction!(refine, m)?)?;
    m.add_function(wrap_pyfunction!(make_werner, m)?)?;
    m.add_function(wrap_pyfunction!(make_generalized_werner, m)?)?;
    m.add_function(wrap_pyfunction!(make_mems, m)?)?;
    m.add_function(wrap_pyfunction!(make_avn, m)?)?;
    m.add_function(wrap_pyfunction!(max_quantum_value, m)?)?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(hemisphere_set, m)?)?;
    m.add_function(wrap_pyfunction!(hemisphere_all_ones_bound, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_bound, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyDict;

    fn with_module<F: FnOnce(&Bound<'_, PyModule>)>(f: F) {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "steering").unwrap();
            steering(&m).unwrap();
            f(&m);
        });
    }

    #[test]
    fn bound_of_builtin_set() {
        with_module(|m| {
            let set = m.getattr("golden_set").unwrap().call1(("table2-n4",)).unwrap();
            let r = m.getattr("lhs_bound").unwrap().call1((set,)).unwrap();
            let v: f64 = r.getattr("value").unwrap().extract().unwrap();
            assert!((v - 5f64.sqrt() / 4.0).abs() < 1e-12);
        });
    }

    #[test]
    fn errors_map_to_python_exceptions() {
        with_module(|m| {
            let py = m.py();
            let err = m.getattr("make_werner").unwrap().call1((2.0,)).unwrap_err();
            assert!(err.is_instance_of::<PyValueError>(py));
            let big = m.getattr("random_set").unwrap().call1((21, 0)).unwrap();
            let err = m.getattr("lhs_bound_eig").unwrap().call1((big,)).unwrap_err();
            assert!(err.is_instance_of::<CapacityError>(py));
        });
    }

    #[test]
    fn werner_detection_through_bindings() {
        with_module(|m| {
            let rho = m.getattr("make_werner").unwrap().call1((0.7,)).unwrap();
            let set = m.getattr("golden_set").unwrap().call1(("table1-n3",)).unwrap();
            let r = m.getattr("detect").unwrap().call1((rho, set)).unwrap();
            assert!(r.getattr("detected").unwrap().extract::<bool>().unwrap());
            let kw = PyDict::new(m.py());
            kw.set_item("restarts", 2).unwrap();
            kw.set_item("cooling", 0.8).unwrap();
            let opt = m.getattr("anneal").unwrap().call((3, 1), Some(&kw)).unwrap();
            let b: f64 = opt.getattr("best_bound").unwrap().extract().unwrap();
            assert!((b - 3f64.sqrt() / 3.0).abs() < 1e-6);
        });
    }
}

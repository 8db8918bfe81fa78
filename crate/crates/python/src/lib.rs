//! Python bindings: `import pywedgent`.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use wedgent::states::{self, CanonicalSpec};
use wedgent::{Bipartition, Complex64, Objective, SearchConfig, Side, SiteDims};

fn to_py(e: wedgent::Error) -> PyErr {
    if e.is_numerical() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for wedgent::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_side(keep: Option<&str>, cut: &Bipartition) -> PyResult<Side> {
    match keep {
        None => Ok(cut.smaller_side()),
        Some("a" | "A") => Ok(Side::A),
        Some("b" | "B") => Ok(Side::B),
        Some(other) => Err(PyValueError::new_err(format!("keep must be 'a' or 'b', got {other:?}"))),
    }
}

/// Normalized pure state on a register of qudits, site 0 most significant.
#[pyclass(name = "PureState", module = "pywedgent", frozen)]
struct PyPureState(wedgent::PureState);

#[pymethods]
impl PyPureState {
    #[new]
    #[pyo3(signature = (dims, amplitudes, normalize = false))]
    fn new(dims: Vec<usize>, amplitudes: Vec<Complex64>, normalize: bool) -> PyResult<Self> {
        let dims = SiteDims::new(dims).py_err()?;
        let state = if normalize {
            wedgent::PureState::normalized(dims, amplitudes)
        } else {
            wedgent::PureState::new(dims, amplitudes)
        };
        state.map(Self).py_err()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        wedgent::PureState::from_json(text).map(Self).py_err()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.0.dims().as_slice().to_vec()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.amplitudes().to_vec()
    }

    #[getter]
    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn tensor(&self, other: &PyPureState) -> Self {
        Self(self.0.tensor(&other.0))
    }

    fn inner(&self, other: &PyPureState) -> PyResult<Complex64> {
        self.0.inner(&other.0).py_err()
    }

    fn __len__(&self) -> usize {
        self.0.amplitudes().len()
    }

    fn __repr__(&self) -> String {
        format!("PureState(dims={:?})", self.0.dims().as_slice())
    }
}

fn cut_of(state: &PyPureState, block_a: Vec<usize>) -> PyResult<Bipartition> {
    Bipartition::new(state.0.dims(), &block_a).py_err()
}

/// Canonical bipartitions as lists of block-A sites.
#[pyfunction]
fn bipartitions(dims: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
    let dims = SiteDims::new(dims).py_err()?;
    Ok(wedgent::enumerate_bipartitions(&dims).py_err()?.iter().map(|c| c.block_a().to_vec()).collect())
}

/// I-concurrence of a cut from the wedge products of post-measurement vectors.
#[pyfunction]
fn concurrence(state: &PyPureState, block_a: Vec<usize>) -> PyResult<f64> {
    wedgent::concurrence_wedge(&state.0, &cut_of(state, block_a)?).py_err()
}

/// I-concurrence of a cut from the reduced-state purity.
#[pyfunction]
fn concurrence_purity(state: &PyPureState, block_a: Vec<usize>) -> PyResult<f64> {
    wedgent::concurrence_purity(&state.0, &cut_of(state, block_a)?).py_err()
}

#[pyfunction]
#[pyo3(signature = (state, block_a, tol = wedgent::tolerance::CERTIFY))]
fn certify<'py>(py: Python<'py>, state: &PyPureState, block_a: Vec<usize>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let r = wedgent::certify(&state.0, &cut_of(state, block_a)?, tol).py_err()?;
    json_to_py(
        py,
        &serde_json::json!({
            "label": r.cut.to_string(),
            "ortho_res": r.ortho_residual,
            "eq_res": r.equality_residual,
            "sep_res": r.separability_residual,
            "verdict": r.verdict,
        }),
    )
}

/// Full per-cut report with global entanglement and, for three qubits, the 3-tangle.
#[pyfunction]
#[pyo3(signature = (state, tol = wedgent::tolerance::CERTIFY))]
fn analyze<'py>(py: Python<'py>, state: &PyPureState, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let report = wedgent::EntanglementReport::build(&state.0, tol).py_err()?;
    json_to_py(py, &report.to_json())
}

#[pyfunction]
fn global_entanglement(state: &PyPureState) -> PyResult<f64> {
    Ok(wedgent::global_entanglement(&state.0).py_err()?.global_e)
}

#[pyfunction]
#[pyo3(signature = (state, tol = wedgent::tolerance::CERTIFY))]
fn is_absolutely_maximal(state: &PyPureState, tol: f64) -> PyResult<bool> {
    Ok(wedgent::certify_absolutely_maximal(&state.0, tol).py_err()?.absolutely_maximal)
}

#[pyfunction]
fn tangle(state: &PyPureState) -> PyResult<f64> {
    wedgent::three_tangle(&state.0).py_err()
}

/// CKW terms `C²_A(BC)`, `C²_AB`, `C²_AC` and their slack.
#[pyfunction]
fn ckw<'py>(py: Python<'py>, state: &PyPureState) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &wedgent::ckw_check(&state.0).py_err()?)
}

/// Reduced density matrix of one block as nested lists of complex numbers.
#[pyfunction]
#[pyo3(signature = (state, block_a, keep = None, oracle = false))]
fn rdm(state: &PyPureState, block_a: Vec<usize>, keep: Option<&str>, oracle: bool) -> PyResult<Vec<Vec<Complex64>>> {
    let cut = cut_of(state, block_a)?;
    let side = parse_side(keep, &cut)?;
    let rho = if oracle {
        wedgent::rdm_trace_oracle(&state.0, &cut, side)
    } else {
        wedgent::rdm_overlap(&state.0, &cut, side)
    }
    .py_err()?;
    Ok(rho.matrix().rows().map(|r| r.to_vec()).collect())
}

#[pyfunction]
#[pyo3(signature = (state, block_a, keep = None))]
fn coherence(state: &PyPureState, block_a: Vec<usize>, keep: Option<&str>) -> PyResult<f64> {
    let cut = cut_of(state, block_a)?;
    let side = parse_side(keep, &cut)?;
    wedgent::intrinsic_coherence(&state.0, &cut, side).py_err()
}

fn build(spec: CanonicalSpec) -> PyResult<PyPureState> {
    spec.build().map(PyPureState).py_err()
}

#[pyfunction]
fn bell(index: usize) -> PyResult<PyPureState> {
    build(CanonicalSpec::Bell { index })
}

#[pyfunction]
#[pyo3(signature = (a, b, theta = 0.0))]
fn max_two_qubit(a: Complex64, b: Complex64, theta: f64) -> PyResult<PyPureState> {
    states::max_two_qubit(a, b, theta).map(PyPureState).py_err()
}

#[pyfunction]
fn ghz(n: usize) -> PyResult<PyPureState> {
    build(CanonicalSpec::Ghz { n })
}

#[pyfunction]
fn ghz_like(variant: usize) -> PyResult<PyPureState> {
    build(CanonicalSpec::GhzLike { variant })
}

#[pyfunction]
fn w_state() -> PyResult<PyPureState> {
    build(CanonicalSpec::W)
}

#[pyfunction]
fn generalized_bell(d: usize) -> PyResult<PyPureState> {
    build(CanonicalSpec::GeneralizedBell { d })
}

#[pyfunction]
#[pyo3(signature = (k, theta = 0.0))]
fn acin(k: [f64; 5], theta: f64) -> PyResult<PyPureState> {
    build(CanonicalSpec::Acin { k, theta })
}

#[pyfunction]
fn lbps_table(class_index: usize, row: usize) -> PyResult<PyPureState> {
    build(CanonicalSpec::LbpsTable { class: class_index, row })
}

/// Seeded random-restart search. `objective` is `"residual"` or `"max_e"`.
/// Returns `(best_state, summary)`.
#[pyfunction]
#[pyo3(signature = (dims, objective = "residual", restarts = 8, max_iters = 2000, seed = 0, tol = wedgent::tolerance::CERTIFY))]
fn search<'py>(
    py: Python<'py>,
    dims: Vec<usize>,
    objective: &str,
    restarts: usize,
    max_iters: usize,
    seed: u64,
    tol: f64,
) -> PyResult<(PyPureState, Bound<'py, PyAny>)> {
    let objective = match objective {
        "residual" => Objective::MinimizeConstraintResidual,
        "max_e" => Objective::MaximizeGlobalE,
        other => return Err(PyValueError::new_err(format!("unknown objective {other:?}"))),
    };
    let mut cfg = SearchConfig::new(SiteDims::new(dims).py_err()?, objective);
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    cfg.tol = tol;
    let result = py.detach(|| wedgent::maximize(&cfg)).py_err()?;
    let summary = json_to_py(py, &result.to_json())?;
    Ok((PyPureState(result.best_state), summary))
}

#[pymodule]
fn pywedgent(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_function(wrap_pyfunction!(bipartitions, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence_purity, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(global_entanglement, m)?)?;
    m.add_function(wrap_pyfunction!(is_absolutely_maximal, m)?)?;
    m.add_function(wrap_pyfunction!(tangle, m)?)?;
    m.add_function(wrap_pyfunction!(ckw, m)?)?;
    m.add_function(wrap_pyfunction!(rdm, m)?)?;
    m.add_function(wrap_pyfunction!(coherence, m)?)?;
    m.add_function(wrap_pyfunction!(bell, m)?)?;
    m.add_function(wrap_pyfunction!(max_two_qubit, m)?)?;
    m.add_function(wrap_pyfunction!(ghz, m)?)?;
    m.add_function(wrap_pyfunction!(ghz_like, m)?)?;
    m.add_function(wrap_pyfunction!(w_state, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_bell, m)?)?;
    m.add_function(wrap_pyfunction!(acin, m)?)?;
    m.add_function(wrap_pyfunction!(lbps_table, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add("CERTIFY_TOL", wedgent::tolerance::CERTIFY)?;
    Ok(())
}

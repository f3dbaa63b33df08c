//! Python bindings: a `Matrix` type plus the radius, index, structure and
//! tensor-law operations. Structured results come back as plain dicts.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::IntoPyObjectExt;
use specradius::harness::{self, Seed};
use specradius::indices::{self, IndexValue};
use specradius::matkernel as mk;
use specradius::tensorlaw::{self, TensorConfig};
use specradius::{numrange, structures, ComplexMatrix, ToleranceConfig};

create_exception!(specradius, SpecRadiusError, PyValueError);

fn err(e: specradius::Error) -> PyErr {
    SpecRadiusError::new_err(e.to_string())
}

fn cfg(tol: Option<f64>) -> ToleranceConfig {
    match tol {
        Some(t) => ToleranceConfig::default().with_radius_tol(t),
        None => ToleranceConfig::default(),
    }
}

/// Serialized value as the equivalent Python object.
fn to_python(py: Python<'_>, value: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| SpecRadiusError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))?.unbind().into_py_any(py)
}

/// `int` for finite indices, `math.inf` for `∞`.
fn index_to_python(py: Python<'_>, v: IndexValue) -> PyResult<Py<PyAny>> {
    match v {
        IndexValue::Finite(k) => k.into_py_any(py),
        IndexValue::Infinite => f64::INFINITY.into_py_any(py),
    }
}

#[pyclass(name = "Matrix", module = "specradius", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrix {
    inner: ComplexMatrix,
}

impl From<ComplexMatrix> for PyMatrix {
    fn from(inner: ComplexMatrix) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyMatrix {
    /// Builds a matrix from a list of rows of numbers (complex allowed).
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        ComplexMatrix::from_rows(&rows).map(Self::from).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ComplexMatrix::from_json(text).map(Self::from).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        ComplexMatrix::identity(n).into()
    }

    #[staticmethod]
    fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix::zeros(rows, cols).into()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    fn tolist(&self) -> Vec<Vec<Complex64>> {
        self.inner.to_rows()
    }

    fn adjoint(&self) -> Self {
        self.inner.adjoint().into()
    }

    fn __getitem__(&self, index: (usize, usize)) -> PyResult<Complex64> {
        let (i, j) = index;
        if i >= self.inner.rows() || j >= self.inner.cols() {
            return Err(pyo3::exceptions::PyIndexError::new_err(format!("index ({i}, {j}) out of range")));
        }
        Ok(self.inner[(i, j)])
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        if self.inner.cols() != other.inner.rows() {
            return Err(SpecRadiusError::new_err(format!(
                "cannot multiply {}×{} by {}×{}",
                self.inner.rows(),
                self.inner.cols(),
                other.inner.rows(),
                other.inner.cols()
            )));
        }
        Ok((&self.inner * &other.inner).into())
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Matrix({}×{}, {})", self.inner.rows(), self.inner.cols(), self.inner.to_json())
    }
}

#[pyfunction]
#[pyo3(signature = (a, tol = None))]
fn numerical_radius(a: &PyMatrix, tol: Option<f64>) -> PyResult<f64> {
    let c = cfg(tol);
    c.validate().map_err(err)?;
    numrange::numerical_radius(&a.inner, &c).map_err(err)
}

#[pyfunction]
fn operator_norm(a: &PyMatrix) -> f64 {
    mk::operator_norm(&a.inner, &cfg(None))
}

#[pyfunction]
fn spectral_radius(a: &PyMatrix) -> PyResult<f64> {
    mk::spectral_radius(&a.inner, &cfg(None)).map_err(err)
}

#[pyfunction]
fn tensor_product(a: &PyMatrix, b: &PyMatrix) -> PyResult<PyMatrix> {
    mk::tensor_product(&a.inner, &b.inner).map(PyMatrix::from).map_err(err)
}

#[pyfunction]
fn is_origin_disc(a: &PyMatrix) -> PyResult<bool> {
    numrange::is_origin_disc(&a.inner, &cfg(None)).map_err(err)
}

#[pyfunction]
fn support_oscillation(a: &PyMatrix) -> PyResult<f64> {
    numrange::support_oscillation(&a.inner, &cfg(None)).map_err(err)
}

/// Dict with `angles`, `support`, `boundary` (as `[re, im]`), `radius`,
/// `is_disc` and `oscillation`.
#[pyfunction]
fn boundary_points(py: Python<'_>, a: &PyMatrix, points: usize) -> PyResult<Py<PyAny>> {
    to_python(py, &numrange::boundary_points(&a.inner, points, &cfg(None)).map_err(err)?)
}

#[pyfunction]
fn power_norm_index(py: Python<'_>, a: &PyMatrix) -> PyResult<Py<PyAny>> {
    index_to_python(py, indices::power_norm_index(&a.inner, &cfg(None)).map_err(err)?)
}

#[pyfunction]
fn nilpotency_index(py: Python<'_>, a: &PyMatrix) -> PyResult<Py<PyAny>> {
    index_to_python(py, indices::nilpotency_index_dense(&a.inner, &cfg(None)).map_err(err)?)
}

#[pyfunction]
fn nilpotency_index_graph(py: Python<'_>, b: &PyMatrix) -> PyResult<Py<PyAny>> {
    index_to_python(py, indices::nilpotency_index_graph(&b.inner).map_err(err)?)
}

#[pyfunction]
fn is_class_sn(a: &PyMatrix) -> PyResult<bool> {
    indices::is_class_sn(&a.inner, &cfg(None)).map_err(err)
}

#[pyfunction]
fn has_unitary_part(a: &PyMatrix) -> PyResult<bool> {
    indices::has_unitary_part(&a.inner, &cfg(None)).map_err(err)
}

#[pyfunction]
fn jordan_block(n: usize) -> PyResult<PyMatrix> {
    structures::jordan_block(n).map(PyMatrix::from).map_err(err)
}

/// Companion matrix of `z^n + a_1 z^{n−1} + … + a_n`.
#[pyfunction]
fn companion(coeffs: Vec<Complex64>) -> PyResult<PyMatrix> {
    structures::companion(&coeffs).map(PyMatrix::from).map_err(err)
}

#[pyfunction]
fn halmos_dilation(a: &PyMatrix) -> PyResult<PyMatrix> {
    structures::halmos_dilation(&a.inner, &cfg(None)).map(PyMatrix::from).map_err(err)
}

/// `None`, or a dict with the 1-based `permutation`, `level_sizes` and
/// `blocks` (matrix dicts).
#[pyfunction]
fn detect_block_shift(py: Python<'_>, b: &PyMatrix) -> PyResult<Py<PyAny>> {
    match structures::detect_block_shift(&b.inner, &cfg(None)).map_err(err)? {
        Some(d) => to_python(py, &d),
        None => Ok(py.None()),
    }
}

/// Matrices of a gallery entry by name.
#[pyfunction]
#[pyo3(signature = (label, a = None))]
fn gallery(label: &str, a: Option<f64>) -> PyResult<Vec<(String, PyMatrix)>> {
    let entry = structures::gallery_entry(label, a).map_err(err)?;
    Ok(entry.matrices.into_iter().map(|(n, m)| (n.to_string(), m.into())).collect())
}

#[pyfunction]
#[pyo3(signature = (a, b, size_cap = None))]
fn evaluate_pair(py: Python<'_>, a: &PyMatrix, b: &PyMatrix, size_cap: Option<usize>) -> PyResult<Py<PyAny>> {
    let mut c = TensorConfig::default();
    if let Some(cap) = size_cap {
        c = c.with_size_cap(cap);
    }
    to_python(py, &tensorlaw::evaluate_pair(&a.inner, &b.inner, &c).map_err(err)?)
}

#[pyfunction]
fn predict_equality_nonneg(a: &PyMatrix, b: &PyMatrix) -> PyResult<bool> {
    tensorlaw::predict_equality_nonneg(&a.inner, &b.inner, &cfg(None)).map_err(err)
}

#[pyfunction]
fn theorem_2_5_check(py: Python<'_>, a: &PyMatrix, m: usize) -> PyResult<Py<PyAny>> {
    to_python(py, &tensorlaw::theorem_2_5_check(&a.inner, m, &TensorConfig::default()).map_err(err)?)
}

#[pyfunction]
fn theorem_2_10_check(py: Python<'_>, a: &PyMatrix) -> PyResult<Py<PyAny>> {
    to_python(py, &tensorlaw::theorem_2_10_check(&a.inner, &cfg(None)).map_err(err)?)
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    harness::SUITE_NAMES.to_vec()
}

/// Suite result dict with `suite_name`, `trials`, `failures` and `elapsed`.
#[pyfunction]
#[pyo3(signature = (name, trials = 100, seed = 0))]
fn run_suite(py: Python<'_>, name: &str, trials: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let result = py.detach(|| harness::run_suite(name, trials, Seed(seed), &TensorConfig::default()));
    to_python(py, &result.map_err(err)?)
}

#[pyfunction]
fn gen_contraction(n: usize, seed: u64) -> PyResult<PyMatrix> {
    harness::gen_contraction(n, Seed(seed)).map(PyMatrix::from).map_err(err)
}

#[pyfunction]
fn gen_unitary(n: usize, seed: u64) -> PyResult<PyMatrix> {
    harness::gen_unitary(n, Seed(seed)).map(PyMatrix::from).map_err(err)
}

#[pyfunction]
fn gen_nonneg_irreducible(m: usize, density: f64, seed: u64) -> PyResult<PyMatrix> {
    harness::gen_nonneg_irreducible(m, density, Seed(seed)).map(PyMatrix::from).map_err(err)
}

#[pymodule]
#[pyo3(name = "specradius")]
fn specradius_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add("SpecRadiusError", m.py().get_type::<SpecRadiusError>())?;
    m.add_function(wrap_pyfunction!(numerical_radius, m)?)?;
    m.add_function(wrap_pyfunction!(operator_norm, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_radius, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_product, m)?)?;
    m.add_function(wrap_pyfunction!(is_origin_disc, m)?)?;
    m.add_function(wrap_pyfunction!(support_oscillation, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_points, m)?)?;
    m.add_function(wrap_pyfunction!(power_norm_index, m)?)?;
    m.add_function(wrap_pyfunction!(nilpotency_index, m)?)?;
    m.add_function(wrap_pyfunction!(nilpotency_index_graph, m)?)?;
    m.add_function(wrap_pyfunction!(is_class_sn, m)?)?;
    m.add_function(wrap_pyfunction!(has_unitary_part, m)?)?;
    m.add_function(wrap_pyfunction!(jordan_block, m)?)?;
    m.add_function(wrap_pyfunction!(companion, m)?)?;
    m.add_function(wrap_pyfunction!(halmos_dilation, m)?)?;
    m.add_function(wrap_pyfunction!(detect_block_shift, m)?)?;
    m.add_function(wrap_pyfunction!(gallery, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_pair, m)?)?;
    m.add_function(wrap_pyfunction!(predict_equality_nonneg, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_2_5_check, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_2_10_check, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(gen_contraction, m)?)?;
    m.add_function(wrap_pyfunction!(gen_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(gen_nonneg_irreducible, m)?)?;
    Ok(())
}

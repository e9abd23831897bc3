//! Python bindings for the spin operator toolkit.
//!
//! Matrices cross the boundary as nested lists of Python complex numbers;
//! spins are strings like "1/2" or "2". Build as a cdylib and import as
//! `pl_py` (see python/smoke_test.py).

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pl_core::entangle;
use pl_core::lubanski::{self, FourMomentum};
use pl_core::spectral;
use pl_core::spin::DEFAULT_TOL;
use pl_core::{CMatrix, HalfInteger, SpinTriple};

type Rows = Vec<Vec<Complex64>>;

fn to_py_err(e: pl_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_spin(spin: &str) -> PyResult<HalfInteger> {
    spin.parse::<HalfInteger>().map_err(to_py_err)
}

fn triple(spin: &str) -> PyResult<SpinTriple> {
    pl_core::make_spin_matrices(parse_spin(spin)?).map_err(to_py_err)
}

fn to_rows(m: &CMatrix) -> Rows {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn from_rows(rows: &Rows) -> PyResult<CMatrix> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(PyValueError::new_err("matrix must be non-empty"));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    Ok(CMatrix::from_rows(rows))
}

fn momentum(p: (f64, f64, f64, f64)) -> PyResult<FourMomentum> {
    for x in [p.0, p.1, p.2, p.3] {
        if !x.is_finite() {
            return Err(PyValueError::new_err("momentum components must be finite"));
        }
    }
    Ok(FourMomentum::new(p.0, p.1, p.2, p.3))
}

fn state(amplitudes: &[Complex64]) -> PyResult<entangle::ThreeQubitState> {
    entangle::ThreeQubitState::from_slice(amplitudes).map_err(to_py_err)
}

/// One named residual check.
#[pyclass(get_all, frozen, skip_from_py_object)]
#[derive(Clone)]
struct Check {
    name: String,
    residual: f64,
    tolerance: f64,
    passed: bool,
}

#[pymethods]
impl Check {
    fn __repr__(&self) -> String {
        format!(
            "Check(name='{}', residual={:e}, tolerance={:e}, passed={})",
            self.name, self.residual, self.tolerance, self.passed
        )
    }
}

fn checks_of(report: pl_core::IdentityReport) -> Vec<Check> {
    report
        .checks
        .into_iter()
        .map(|c| Check { name: c.name, residual: c.residual, tolerance: c.tolerance, passed: c.pass })
        .collect()
}

/// Spin matrices (S1, S2, S3) for the given spin.
#[pyfunction]
fn spin_matrices(spin: &str) -> PyResult<(Rows, Rows, Rows)> {
    let t = triple(spin)?;
    Ok((to_rows(&t.s1), to_rows(&t.s2), to_rows(&t.s3)))
}

/// Residual checks of the defining spin identities.
#[pyfunction]
#[pyo3(signature = (spin, tol = DEFAULT_TOL))]
fn verify_spin_identities(spin: &str, tol: f64) -> PyResult<Vec<Check>> {
    Ok(checks_of(pl_core::verify_spin_identities(&triple(spin)?, tol)))
}

/// The 4(2s+1)-dimensional block operator S.
#[pyfunction]
fn s_matrix(spin: &str) -> PyResult<Rows> {
    Ok(to_rows(&lubanski::s_matrix(&triple(spin)?)))
}

/// Closed-form inverse of S.
#[pyfunction]
fn s_inverse(spin: &str) -> PyResult<Rows> {
    Ok(to_rows(&lubanski::s_inverse(&triple(spin)?)))
}

/// The split S = T1 + T2 and T3 = [T1, T2], as (T1, T2, T3).
#[pyfunction]
fn t_matrices(spin: &str) -> PyResult<(Rows, Rows, Rows)> {
    let t = triple(spin)?;
    Ok((
        to_rows(&lubanski::t1_matrix(&t)),
        to_rows(&lubanski::t2_matrix(&t)),
        to_rows(&lubanski::t3_matrix(&t)),
    ))
}

/// Residual checks of the full T1/T2/T3 operator algebra.
#[pyfunction]
#[pyo3(signature = (spin, tol = DEFAULT_TOL))]
fn verify_t_algebra(spin: &str, tol: f64) -> PyResult<Vec<Check>> {
    Ok(checks_of(lubanski::verify_t_algebra(&triple(spin)?, tol)))
}

/// The four matrices W^mu for covariant momentum components p.
#[pyfunction]
fn w_matrices(spin: &str, p: (f64, f64, f64, f64)) -> PyResult<Vec<Rows>> {
    let t = triple(spin)?;
    Ok(lubanski::w_matrices(&t, &momentum(p)?).iter().map(to_rows).collect())
}

/// Minkowski inner product with signature (-,+,+,+).
#[pyfunction]
fn minkowski_dot(p: (f64, f64, f64, f64), q: (f64, f64, f64, f64)) -> PyResult<f64> {
    Ok(lubanski::minkowski_dot(&momentum(p)?, &momentum(q)?))
}

/// Casimir structure of sum W_mu W^mu.
#[pyclass(get_all, frozen)]
struct CasimirResult {
    scalar: Complex64,
    off_identity_residual: f64,
    momentum_square: f64,
    ratio: Option<f64>,
    predicted_scalar: f64,
    lightlike: bool,
    checks: Vec<Check>,
}

#[pyfunction]
#[pyo3(signature = (spin, p, tol = DEFAULT_TOL))]
fn casimir(spin: &str, p: (f64, f64, f64, f64), tol: f64) -> PyResult<CasimirResult> {
    let report = lubanski::casimir(&triple(spin)?, &momentum(p)?, tol);
    Ok(CasimirResult {
        scalar: report.scalar,
        off_identity_residual: report.off_identity_residual,
        momentum_square: report.momentum_square,
        ratio: report.ratio,
        predicted_scalar: report.predicted_scalar,
        lightlike: report.lightlike,
        checks: report
            .checks
            .into_iter()
            .map(|c| Check { name: c.name, residual: c.residual, tolerance: c.tolerance, passed: c.pass })
            .collect(),
    })
}

/// Predicted eigenvalue multiset of S as (eigenvalue, multiplicity) pairs.
#[pyfunction]
fn predict_spectrum(spin: &str) -> PyResult<Vec<(Complex64, usize)>> {
    let p = spectral::predict_spectrum(parse_spin(spin)?).map_err(to_py_err)?;
    Ok(p.entries.iter().map(|e| (e.value, e.multiplicity)).collect())
}

/// Closed-form tr(S^n); the imaginary part is rounding residue.
#[pyfunction]
fn trace_power_closed_form(spin: &str, n: u32) -> PyResult<Complex64> {
    Ok(spectral::trace_power_closed_form(parse_spin(spin)?, n))
}

/// tr(M^n) by repeated multiplication.
#[pyfunction]
fn trace_power_direct(matrix: Rows, n: u32) -> PyResult<Complex64> {
    let m = from_rows(&matrix)?;
    if !m.is_square() {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    Ok(spectral::trace_power_direct(&m, n))
}

/// All eigenvalues, per-eigenvalue geometric multiplicities and the solver
/// residual.
#[pyclass(get_all, frozen)]
struct EigenResult {
    eigenvalues: Vec<Complex64>,
    geometric_multiplicities: Vec<usize>,
    residual: f64,
}

#[pyfunction]
fn eigenvalues(matrix: Rows) -> PyResult<EigenResult> {
    let m = from_rows(&matrix)?;
    if !m.is_square() {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    let result = spectral::eigenvalues_dense(&m).map_err(to_py_err)?;
    Ok(EigenResult {
        eigenvalues: result.eigenvalues,
        geometric_multiplicities: result.geometric_multiplicities,
        residual: result.residual,
    })
}

/// dim - rank(M - lambda I) at the relative threshold tol * sigma_max.
#[pyfunction]
#[pyo3(signature = (matrix, lam, tol = spectral::RANK_TOL_DEFAULT))]
fn geometric_multiplicity(matrix: Rows, lam: Complex64, tol: f64) -> PyResult<usize> {
    let m = from_rows(&matrix)?;
    if !m.is_square() {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    Ok(spectral::geometric_multiplicity(&m, lam, tol))
}

/// Orthonormal basis of the lambda eigenspace (rows are vectors).
#[pyfunction]
#[pyo3(signature = (matrix, lam, tol = spectral::RANK_TOL_DEFAULT))]
fn eigenspace_basis(matrix: Rows, lam: Complex64, tol: f64) -> PyResult<Rows> {
    let m = from_rows(&matrix)?;
    if !m.is_square() {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    Ok(spectral::eigenspace_basis(&m, lam, tol))
}

/// The four degenerate spin-1/2 eigenvectors v1..v4 as amplitude lists.
#[pyfunction]
fn spin_half_eigenvectors() -> Vec<Vec<Complex64>> {
    entangle::spin_half_eigenvectors()
        .iter()
        .map(|v| v.amplitudes().to_vec())
        .collect()
}

/// Parse a combination such as "v1+v4" or "0.5*v1 + (0,1)*v2" into
/// normalized amplitudes.
#[pyfunction]
fn parse_state(spec: &str) -> PyResult<Vec<Complex64>> {
    Ok(entangle::parse_state_spec(spec).map_err(to_py_err)?.amplitudes().to_vec())
}

/// 3-tangle of an 8-amplitude state (normalized first).
#[pyfunction]
fn three_tangle(amplitudes: Vec<Complex64>) -> PyResult<f64> {
    Ok(entangle::three_tangle(&state(&amplitudes)?))
}

/// n-tangle for n in {2, 3, 4}; the state has 2^n amplitudes.
#[pyfunction]
fn n_tangle(amplitudes: Vec<Complex64>, n: usize) -> PyResult<f64> {
    entangle::n_tangle(&amplitudes, n).map_err(to_py_err)
}

/// Schmidt rank and coefficients across a cut ("1|23", "2|13" or "3|12").
#[pyfunction]
#[pyo3(signature = (amplitudes, cut, tol = spectral::RANK_TOL_DEFAULT))]
fn schmidt_analysis(amplitudes: Vec<Complex64>, cut: &str, tol: f64) -> PyResult<(usize, Vec<f64>)> {
    let cut: entangle::Cut = cut.parse().map_err(to_py_err)?;
    let sr = entangle::schmidt_analysis(&state(&amplitudes)?, cut, tol);
    Ok((sr.rank, sr.coefficients))
}

/// Tangle, Schmidt ranks, class and the tangle-threshold verdict.
#[pyclass(get_all, frozen)]
struct Verdict {
    tangle: f64,
    schmidt_ranks: [usize; 3],
    class_name: String,
    entangled: bool,
}

#[pymethods]
impl Verdict {
    fn __repr__(&self) -> String {
        format!(
            "Verdict(tangle={}, schmidt_ranks={:?}, class_name='{}', entangled={})",
            self.tangle, self.schmidt_ranks, self.class_name, self.entangled
        )
    }
}

#[pyfunction]
#[pyo3(signature = (amplitudes, tol = DEFAULT_TOL))]
fn classify(amplitudes: Vec<Complex64>, tol: f64) -> PyResult<Verdict> {
    let verdict = entangle::classify(&state(&amplitudes)?, tol);
    Ok(Verdict {
        tangle: verdict.tangle,
        schmidt_ranks: verdict.schmidt_ranks,
        class_name: verdict.class.to_string(),
        entangled: verdict.entangled,
    })
}

#[pymodule]
fn pl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    m.add("TANGLE_THRESHOLD", entangle::TANGLE_THRESHOLD)?;
    m.add("CASIMIR_NORMALIZATION", lubanski::CASIMIR_NORMALIZATION)?;
    m.add_class::<Check>()?;
    m.add_class::<CasimirResult>()?;
    m.add_class::<EigenResult>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(spin_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(verify_spin_identities, m)?)?;
    m.add_function(wrap_pyfunction!(s_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(s_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(t_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(verify_t_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(w_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(minkowski_dot, m)?)?;
    m.add_function(wrap_pyfunction!(casimir, m)?)?;
    m.add_function(wrap_pyfunction!(predict_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(trace_power_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(trace_power_direct, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(geometric_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(eigenspace_basis, m)?)?;
    m.add_function(wrap_pyfunction!(spin_half_eigenvectors, m)?)?;
    m.add_function(wrap_pyfunction!(parse_state, m)?)?;
    m.add_function(wrap_pyfunction!(three_tangle, m)?)?;
    m.add_function(wrap_pyfunction!(n_tangle, m)?)?;
    m.add_function(wrap_pyfunction!(schmidt_analysis, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    Ok(())
}

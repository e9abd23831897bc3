//! Spectrum of the block operator S: closed-form predictions, trace powers,
//! and the machinery that cross-validates them.
//!
//! Verification is layered so the delicate parts check each other. The
//! closed-form trace agrees with direct powers of S (cheap and exact);
//! Newton-identity moment matching pins the predicted eigenvalue multiset;
//! rank-nullity pins the geometric multiplicities; the dense QR solver is an
//! independent oracle on top. None of the first three layers depends on the
//! solver.

pub mod eigen;
pub mod svd;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::report::IdentityReport;
use crate::spin::HalfInteger;

pub use eigen::{canonical_sort, eigenvalues_dense, EigenResult, MAX_DIMENSION, RANK_TOL_DEFAULT};
pub use svd::{null_space, rank_from_singular_values, svd, Svd};

/// One predicted eigenvalue with its algebraic multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PredictedEigenvalue {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// The predicted eigenvalue multiset of the 4(2s+1)-dimensional operator S:
/// at most four distinct values whose multiplicities sum to the dimension.
#[derive(Clone, Debug)]
pub struct SpectrumPrediction {
    pub entries: Vec<PredictedEigenvalue>,
}

impl SpectrumPrediction {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// The multiset expanded with repetition, canonically sorted.
    pub fn expand(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect();
        canonical_sort(&mut out);
        out
    }

    /// Power sum of the multiset, sum of mult * lambda^n.
    pub fn moment(&self, n: u32) -> Complex64 {
        self.entries
            .iter()
            .map(|e| e.value.powu(n) * e.multiplicity as f64)
            .sum()
    }
}

/// Closed-form spectrum of S for spin s: eigenvalue s with multiplicity
/// 2s+3, eigenvalue -(s+1) with multiplicity 2s-1 (absent at spin 1/2), and
/// the conjugate pair (-1 +- i sqrt(4s(s+1)-1))/2 with multiplicity 2s+1
/// each. Entries are canonically sorted.
pub fn predict_spectrum(s: HalfInteger) -> Result<SpectrumPrediction> {
    if s.twice() < 1 {
        return Err(Error::invalid_spin(s));
    }
    let sv = s.value();
    let twice = s.twice() as usize;
    let root = (4.0 * sv * (sv + 1.0) - 1.0).sqrt();

    let mut entries = vec![
        PredictedEigenvalue {
            value: Complex64::new(-(sv + 1.0), 0.0),
            multiplicity: twice - 1,
        },
        PredictedEigenvalue {
            value: Complex64::new(-0.5, -0.5 * root),
            multiplicity: twice + 1,
        },
        PredictedEigenvalue {
            value: Complex64::new(-0.5, 0.5 * root),
            multiplicity: twice + 1,
        },
        PredictedEigenvalue {
            value: Complex64::new(sv, 0.0),
            multiplicity: twice + 3,
        },
    ];
    entries.retain(|e| e.multiplicity > 0);
    Ok(SpectrumPrediction { entries })
}

/// tr(S^N) evaluated from the predicted spectrum:
/// lambda^N (2s+1) + conj(lambda)^N (2s+1) + (-1)^N (s+1)^N (2s-1) + s^N (2s+3).
/// The conjugate pair cancels the imaginary part; it is returned intact for
/// inspection and must stay below 1e-10 in magnitude.
pub fn trace_power_closed_form(s: HalfInteger, n: u32) -> Complex64 {
    let sv = s.value();
    let dim = s.dimension() as f64; // 2s+1
    let root = (4.0 * sv * (sv + 1.0) - 1.0).sqrt();
    let lambda = Complex64::new(-0.5, 0.5 * root);

    lambda.powu(n) * dim
        + lambda.conj().powu(n) * dim
        + Complex64::new((-1.0f64).powi(n as i32) * (sv + 1.0).powi(n as i32) * (2.0 * sv - 1.0), 0.0)
        + Complex64::new(sv.powi(n as i32) * (2.0 * sv + 3.0), 0.0)
}

/// tr(M^N) by repeated multiplication.
pub fn trace_power_direct(m: &CMatrix, n: u32) -> Complex64 {
    m.matrix_power(n).trace()
}

/// Moment matching: for N = 1..max_n the power sums of the predicted
/// multiset must reproduce tr(M^N) within tol * (1 + |value|). Agreement for
/// enough moments certifies that the prediction is the true algebraic
/// spectrum.
pub fn newton_identity_check(
    prediction: &SpectrumPrediction,
    m: &CMatrix,
    max_n: u32,
    tol: f64,
) -> IdentityReport {
    let mut report = IdentityReport::default();
    let mut power = CMatrix::identity(m.rows());
    for n in 1..=max_n {
        power = power.matmul(m);
        let direct = power.trace();
        let predicted = prediction.moment(n);
        let scale = 1.0 + direct.norm().max(predicted.norm());
        report.push(format!("moment_pow{n}"), (direct - predicted).norm() / scale, tol);
    }
    report
}

/// Geometric multiplicity of lambda: dim - rank(M - lambda I), rank taken at
/// the relative singular-value threshold `tol * sigma_max`.
pub fn geometric_multiplicity(m: &CMatrix, lambda: Complex64, tol: f64) -> usize {
    assert!(m.is_square(), "geometric multiplicity of a non-square matrix");
    let n = m.rows();
    let shifted = m - &CMatrix::identity(n).scale(lambda);
    let decomp = svd(&shifted);
    n - rank_from_singular_values(&decomp.singular_values, tol)
}

/// Orthonormal basis of the eigenspace of lambda (empty when lambda is not
/// an eigenvalue at this threshold). Each vector has unit norm and
/// ‖Mv - lambda v‖ bounded by the discarded singular values.
pub fn eigenspace_basis(m: &CMatrix, lambda: Complex64, tol: f64) -> Vec<Vec<Complex64>> {
    assert!(m.is_square(), "eigenspace of a non-square matrix");
    let n = m.rows();
    let shifted = m - &CMatrix::identity(n).scale(lambda);
    null_space(&shifted, tol)
}

/// Result of greedily pairing a computed eigenvalue multiset against a
/// prediction: each computed value takes the nearest unused predicted value.
#[derive(Clone, Debug)]
pub struct SpectrumMatch {
    pub max_distance: f64,
    pub pairs: Vec<(Complex64, Complex64)>,
}

/// Greedy nearest-neighbour matching; panics if the multiset sizes differ.
pub fn match_spectrum(computed: &[Complex64], prediction: &SpectrumPrediction) -> SpectrumMatch {
    let expanded = prediction.expand();
    assert_eq!(computed.len(), expanded.len(), "multiset size mismatch");
    let mut used = vec![false; expanded.len()];
    let mut pairs = Vec::with_capacity(computed.len());
    let mut max_distance = 0.0f64;
    for &z in computed {
        let (best, dist) = expanded
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, &p)| (i, (z - p).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty remainder");
        used[best] = true;
        max_distance = max_distance.max(dist);
        pairs.push((z, expanded[best]));
    }
    SpectrumMatch { max_distance, pairs }
}

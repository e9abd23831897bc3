//! Dense complex eigenvalues via Hessenberg reduction and shifted QR.
//!
//! The input is reduced to upper Hessenberg form with Householder
//! reflections, then deflated with explicit single-shift QR steps using the
//! Wilkinson shift (the trailing 2x2 eigenvalue closer to the corner entry).
//! A subdiagonal entry counts as negligible below
//! 1e-14 * (|h_kk| + |h_k+1,k+1|). The iteration budget is 30 steps per
//! dimension; exhausting it is an explicit error, never a silent result.
//! No eigenvectors are accumulated — geometric multiplicities come from the
//! rank of M - lambda*I instead.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::spectral::svd::{rank_from_singular_values, svd};

/// Hard cap on the input dimension; everything here is desk-scale.
pub const MAX_DIMENSION: usize = 256;

/// Relative subdiagonal threshold for deflation.
const DEFLATION_EPS: f64 = 1e-14;

/// QR steps allowed per matrix dimension.
const STEPS_PER_DIMENSION: usize = 30;

/// Rank threshold (relative to sigma_max) used when measuring geometric
/// multiplicities; the matrices here have entries of order s, so the
/// threshold must be relative.
pub const RANK_TOL_DEFAULT: f64 = 1e-10;

/// Radius used to group computed eigenvalues into clusters of one repeated
/// eigenvalue. Distinct eigenvalues of every matrix studied here are
/// separated by order one, so this is far from both scales.
const CLUSTER_RADIUS: f64 = 1e-6;

/// Full eigenvalue multiset of a square complex matrix.
#[derive(Clone, Debug)]
pub struct EigenResult {
    /// All eigenvalues, canonically sorted by real then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Geometric multiplicity of each eigenvalue's cluster, parallel to
    /// `eigenvalues`. A simple eigenvalue has geometric multiplicity 1
    /// outright; repeated clusters are measured by rank-nullity.
    pub geometric_multiplicities: Vec<usize>,
    /// Max over the repeated-eigenvalue clusters of the smallest singular
    /// value of M - lambda*I, i.e. the best achievable ‖Mv - lambda v‖ over
    /// unit vectors; 0.0 when every eigenvalue is simple (nothing measured).
    pub residual: f64,
}

/// Sort eigenvalues by real part, then imaginary part.
pub fn canonical_sort(values: &mut [Complex64]) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// All eigenvalues of `m` (dimension at most [`MAX_DIMENSION`]).
/// Deterministic for identical input.
pub fn eigenvalues_dense(m: &CMatrix) -> Result<EigenResult> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    let n = m.rows();
    if n > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge { dim: n, limit: MAX_DIMENSION });
    }

    let mut h = hessenberg(m);
    let mut eigenvalues = qr_eigenvalues(&mut h, n)?;
    canonical_sort(&mut eigenvalues);

    // Cluster repeated eigenvalues, then measure each repeated cluster's
    // geometric multiplicity and defect from the singular values of
    // M - lambda*I. Simple eigenvalues need no measurement: the geometric
    // multiplicity is pinned between 1 and the algebraic one.
    let clusters = cluster(&eigenvalues);
    let mut geometric = vec![1usize; n];
    let mut residual = 0.0f64;
    for (center, members) in &clusters {
        if members.len() < 2 {
            continue;
        }
        let shifted = m - &CMatrix::identity(n).scale(*center);
        let decomp = svd(&shifted);
        let rank = rank_from_singular_values(&decomp.singular_values, RANK_TOL_DEFAULT);
        let sigma_min = decomp.singular_values.last().copied().unwrap_or(0.0);
        residual = residual.max(sigma_min);
        for &idx in members {
            geometric[idx] = n - rank;
        }
    }

    Ok(EigenResult { eigenvalues, geometric_multiplicities: geometric, residual })
}

fn cluster(sorted: &[Complex64]) -> Vec<(Complex64, Vec<usize>)> {
    let mut clusters: Vec<(Complex64, Vec<usize>)> = Vec::new();
    for (idx, &z) in sorted.iter().enumerate() {
        match clusters.iter_mut().find(|(c, _)| (z - *c).norm() <= CLUSTER_RADIUS) {
            Some((_, members)) => members.push(idx),
            None => clusters.push((z, vec![idx])),
        }
    }
    clusters
}

/// Householder reduction to upper Hessenberg form.
fn hessenberg(m: &CMatrix) -> CMatrix {
    let n = m.rows();
    let mut h = m.clone();
    if n < 3 {
        return h;
    }
    for k in 0..n - 2 {
        let norm_x: f64 = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm_x;

        // v = x - alpha e1
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;

        // Left: H <- (I - beta v v*) H on rows k+1.., columns k..
        for j in k..n {
            let dot: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)]).sum();
            let scale = beta * dot;
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= scale * vi;
            }
        }
        // Right: H <- H (I - beta v v*) on columns k+1.., all rows.
        for i in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(j, vj)| h[(i, k + 1 + j)] * vj).sum();
            let scale = beta * dot;
            for (j, vj) in v.iter().enumerate() {
                h[(i, k + 1 + j)] -= scale * vj.conj();
            }
        }
        // Entries below the subdiagonal are now rounding noise.
        for i in k + 2..n {
            h[(i, k)] = Complex64::ZERO;
        }
    }
    h
}

fn subdiagonal_negligible(h: &CMatrix, l: usize) -> bool {
    h[(l, l - 1)].norm() <= DEFLATION_EPS * (h[(l - 1, l - 1)].norm() + h[(l, l)].norm())
}

/// Eigenvalues of the two-by-two block [[a, b], [c, d]].
fn two_by_two_eigenvalues(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mean = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    (mean + disc, mean - disc)
}

/// Wilkinson shift: the trailing 2x2 eigenvalue nearer to the corner entry.
fn wilkinson_shift(h: &CMatrix, hi: usize) -> Complex64 {
    let (l1, l2) = two_by_two_eigenvalues(
        h[(hi - 1, hi - 1)],
        h[(hi - 1, hi)],
        h[(hi, hi - 1)],
        h[(hi, hi)],
    );
    let corner = h[(hi, hi)];
    if (l1 - corner).norm() <= (l2 - corner).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Givens rotation with real cosine: G (a, b)^T = (r, 0)^T where
/// G = [[c, s], [-conj(s), c]].
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, Complex64::ZERO);
    }
    let r = (na * na + nb * nb).sqrt();
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    (na / r, (a / na) * b.conj() / r)
}

/// Shifted QR sweeps with deflation on the Hessenberg matrix; returns the
/// diagonal once fully deflated.
fn qr_eigenvalues(h: &mut CMatrix, n: usize) -> Result<Vec<Complex64>> {
    if n == 1 {
        return Ok(vec![h[(0, 0)]]);
    }
    let budget = STEPS_PER_DIMENSION * n;
    let mut steps = 0usize;
    let mut stagnation = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        // Deflate converged corner eigenvalues and find the active window.
        if subdiagonal_negligible(h, hi) {
            h[(hi, hi - 1)] = Complex64::ZERO;
            hi -= 1;
            stagnation = 0;
            continue;
        }
        let mut lo = hi;
        while lo > 0 && !subdiagonal_negligible(h, lo) {
            lo -= 1;
        }

        if steps >= budget {
            return Err(Error::EigenNonConvergence { dim: n, iterations: steps });
        }
        steps += 1;
        stagnation += 1;

        // Occasional ad-hoc shift to break symmetry-induced cycling.
        let shift = if stagnation.is_multiple_of(12) {
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h, hi)
        };

        qr_step(h, lo, hi, shift);
    }
    Ok((0..n).map(|i| h[(i, i)]).collect())
}

/// One explicit shifted QR step restricted to the active window [lo, hi]:
/// factor H - mu I = QR by Givens rotations, form RQ + mu I.
fn qr_step(h: &mut CMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for i in lo..hi {
        let (c, s) = givens(h[(i, i)], h[(i + 1, i)]);
        rotations.push((c, s));
        for j in i..=hi {
            let top = h[(i, j)];
            let bot = h[(i + 1, j)];
            h[(i, j)] = c * top + s * bot;
            h[(i + 1, j)] = -s.conj() * top + c * bot;
        }
    }
    for (offset, (c, s)) in rotations.iter().enumerate() {
        let i = lo + offset;
        for r in lo..=hi {
            let left = h[(r, i)];
            let right = h[(r, i + 1)];
            h[(r, i)] = c * left + s.conj() * right;
            h[(r, i + 1)] = -s * left + c * right;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

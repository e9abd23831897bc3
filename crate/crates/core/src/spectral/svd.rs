//! Singular value decomposition of dense complex matrices by one-sided
//! Jacobi rotations.
//!
//! Columns of a working copy are rotated pairwise until mutually orthogonal;
//! the final column norms are the singular values and the accumulated
//! rotations give the right singular vectors. Quadratic convergence makes a
//! handful of sweeps enough at desk scale, and the right-vector columns for
//! negligible singular values are an orthonormal null-space basis, which is
//! what the rank and eigenspace routines need.

use num_complex::Complex64;

use crate::matrix::CMatrix;

const MAX_SWEEPS: usize = 64;
const CONVERGENCE_EPS: f64 = 1e-15;

/// A = U diag(sigma) V*. `u` has the shape of A with zero columns where the
/// singular value vanishes; `v` is square unitary; singular values descend.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMatrix,
    pub singular_values: Vec<f64>,
    pub v: CMatrix,
}

pub fn svd(a: &CMatrix) -> Svd {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = a.clone();
    let mut v = CMatrix::identity(cols);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::ZERO;
                for i in 0..rows {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    app += wp.norm_sqr();
                    aqq += wq.norm_sqr();
                    apq += wp.conj() * wq;
                }
                let off = apq.norm();
                if off <= CONVERGENCE_EPS * (app * aqq).sqrt() || off == 0.0 {
                    continue;
                }
                rotated = true;

                // Diagonalize the 2x2 Gram block [[app, apq], [conj(apq), aqq]].
                let tau = (aqq - app) / (2.0 * off);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                let phase = apq / off;

                for i in 0..rows {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    w[(i, p)] = cs * wp - sn * phase.conj() * wq;
                    w[(i, q)] = sn * phase * wp + cs * wq;
                }
                for i in 0..cols {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = cs * vp - sn * phase.conj() * vq;
                    v[(i, q)] = sn * phase * vp + cs * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    // Column norms are the singular values; sort descending.
    let mut norms: Vec<(usize, f64)> = (0..cols)
        .map(|j| {
            let n = (0..rows).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            (j, n)
        })
        .collect();
    norms.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut u = CMatrix::zeros(rows, cols);
    let mut v_sorted = CMatrix::zeros(cols, cols);
    let mut singular_values = Vec::with_capacity(cols);
    for (dst, &(src, sigma)) in norms.iter().enumerate() {
        singular_values.push(sigma);
        if sigma > 0.0 {
            for i in 0..rows {
                u[(i, dst)] = w[(i, src)] / sigma;
            }
        }
        for i in 0..cols {
            v_sorted[(i, dst)] = v[(i, src)];
        }
    }

    Svd { u, singular_values, v: v_sorted }
}

/// Count of singular values above `tol * sigma_max`.
pub fn rank_from_singular_values(singular_values: &[f64], tol: f64) -> usize {
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    singular_values.iter().filter(|&&s| s > tol * sigma_max && s > 0.0).count()
}

/// Orthonormal basis of the null space at threshold `tol * sigma_max`
/// (right singular vectors of the negligible singular values).
pub fn null_space(a: &CMatrix, tol: f64) -> Vec<Vec<Complex64>> {
    let decomp = svd(a);
    let rank = rank_from_singular_values(&decomp.singular_values, tol);
    (rank..a.cols())
        .map(|j| (0..a.cols()).map(|i| decomp.v[(i, j)]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn reconstruction_residual(a: &CMatrix, d: &Svd) -> f64 {
        let sigma = CMatrix::diag(
            &d.singular_values.iter().map(|&s| Complex64::new(s, 0.0)).collect::<Vec<_>>(),
        );
        a.max_abs_diff(&d.u.matmul(&sigma).matmul(&d.v.adjoint()))
    }

    #[test]
    fn reconstructs_random_square_matrices() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in [2, 5, 9] {
            let a = random_matrix(&mut rng, n, n);
            let d = svd(&a);
            assert!(reconstruction_residual(&a, &d) < 1e-13);
            // V unitary
            let vtv = d.v.adjoint().matmul(&d.v);
            assert!(vtv.approx_eq(&CMatrix::identity(n), 1e-13));
            // descending
            for w in d.singular_values.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn reconstructs_wide_matrices() {
        let mut rng = StdRng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 2, 4);
        let d = svd(&a);
        assert!(reconstruction_residual(&a, &d) < 1e-14);
        assert_eq!(d.singular_values.len(), 4);
        // a 2x4 matrix has at most two nonzero singular values
        assert!(d.singular_values[2] < 1e-14);
        assert!(d.singular_values[3] < 1e-14);
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        let u = CMatrix::column(&[Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.2), Complex64::new(0.0, 1.0)]);
        let v = CMatrix::column(&[Complex64::new(0.7, 0.0), Complex64::new(0.2, -0.4), Complex64::new(1.0, 1.0)]);
        let a = u.matmul(&v.adjoint());
        let d = svd(&a);
        assert_eq!(rank_from_singular_values(&d.singular_values, 1e-10), 1);
        assert_eq!(null_space(&a, 1e-10).len(), 2);
    }

    #[test]
    fn null_space_vectors_annihilate() {
        let mut rng = StdRng::seed_from_u64(3);
        let thin = random_matrix(&mut rng, 5, 2);
        let a = thin.matmul(&random_matrix(&mut rng, 2, 5)); // rank 2 in C^5
        for vec in null_space(&a, 1e-10) {
            let image = a.apply(&vec);
            let norm: f64 = image.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(norm < 1e-12, "‖Av‖ = {norm}");
        }
        assert_eq!(null_space(&a, 1e-10).len(), 3);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let a = CMatrix::zeros(3, 3);
        let d = svd(&a);
        assert_eq!(rank_from_singular_values(&d.singular_values, 1e-10), 0);
        assert_eq!(null_space(&a, 1e-10).len(), 3);
    }
}

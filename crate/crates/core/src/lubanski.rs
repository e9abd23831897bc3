//! The Pauli-Lubanski block operator and its algebra.
//!
//! From a spin triple this module assembles the 4(2s+1)-dimensional block
//! matrix S = (S_rho_lambda), its closed-form inverse, the split S = T1 + T2
//! into a skew-hermitian and a hermitian part, the commutator T3 = [T1, T2],
//! and the four matrices W^mu = sum epsilon^{mu nu rho lambda} S_{rho lambda}
//! p_nu for a given 4-momentum. The metric is diag(-1, 1, 1, 1).
//!
//! S itself is nonnormal ([S, S*] = 2 T3 != 0) while T1 and T2 are separately
//! normal; [`verify_t_algebra`] measures the residual of every identity the
//! decomposition satisfies.

use num_complex::Complex64;

use crate::matrix::{anticommutator, commutator, CMatrix};
use crate::report::{Check, IdentityReport};
use crate::spin::{HalfInteger, SpinTriple};

/// Metric signature, fixed to (-,+,+,+).
pub const METRIC_DIAG: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Sign convention for the totally antisymmetric symbol: epsilon^{0123} = +1.
/// Every verified quantity is quadratic in epsilon, so the global sign never
/// matters downstream.
pub const EPSILON_0123: f64 = 1.0;

/// Ratio of tr(sum_mu W_mu W^mu)/dim to s(s+1)(p.p), measured once by brute
/// force at spin 1/2 with a timelike momentum and frozen here. The W^mu sum
/// carries no 1/2 prefactor, which squares to this factor of 4. Tests assert
/// the ratio is spin-independent across the whole sweep.
pub const CASIMIR_NORMALIZATION: f64 = 4.0;

/// Totally antisymmetric symbol on four indices in 0..4; 0 on repeats.
pub fn levi_civita(indices: [usize; 4]) -> i32 {
    let mut sign = 1;
    for a in 0..4 {
        assert!(indices[a] < 4, "index out of range");
        for b in a + 1..4 {
            if indices[a] == indices[b] {
                return 0;
            }
            if indices[a] > indices[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Covariant components (p_0, p_1, p_2, p_3) of a 4-momentum; no mass-shell
/// constraint is imposed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourMomentum {
    pub components: [f64; 4],
}

impl FourMomentum {
    pub fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        let components = [p0, p1, p2, p3];
        assert!(components.iter().all(|x| x.is_finite()), "momentum components must be finite");
        FourMomentum { components }
    }

    pub fn euclidean_norm_sq(&self) -> f64 {
        self.components.iter().map(|x| x * x).sum()
    }
}

/// Minkowski inner product -p0 q0 + p1 q1 + p2 q2 + p3 q3.
pub fn minkowski_dot(p: &FourMomentum, q: &FourMomentum) -> f64 {
    (0..4).map(|mu| METRIC_DIAG[mu] * p.components[mu] * q.components[mu]).sum()
}

fn blocks4(d: usize, blocks: [[Option<CMatrix>; 4]; 4]) -> CMatrix {
    let mut m = CMatrix::zeros(4 * d, 4 * d);
    for (r, row) in blocks.into_iter().enumerate() {
        for (c, b) in row.into_iter().enumerate() {
            if let Some(b) = b {
                m.set_block(r * d, c * d, &b);
            }
        }
    }
    m
}

/// The 4(2s+1)-dimensional block matrix
/// `[[0, S1, S2, S3], [-S1, 0, -iS3, iS2], [-S2, iS3, 0, -iS1], [-S3, -iS2, iS1, 0]]`.
pub fn s_matrix(t: &SpinTriple) -> CMatrix {
    let d = t.dimension();
    let i = Complex64::i();
    blocks4(d, [
        [None, Some(t.s1.clone()), Some(t.s2.clone()), Some(t.s3.clone())],
        [Some(-&t.s1), None, Some(t.s3.scale(-i)), Some(t.s2.scale(i))],
        [Some(-&t.s2), Some(t.s3.scale(i)), None, Some(t.s1.scale(-i))],
        [Some(-&t.s3), Some(t.s2.scale(-i)), Some(t.s1.scale(i)), None],
    ])
}

/// Closed-form inverse of [`s_matrix`], with prefactor 1/(s(s+1)).
pub fn s_inverse(t: &SpinTriple) -> CMatrix {
    let d = t.dimension();
    let i = Complex64::i();
    let id = CMatrix::identity(d);
    let raw = blocks4(d, [
        [Some(-&id), Some(-&t.s1), Some(-&t.s2), Some(-&t.s3)],
        [Some(t.s1.clone()), Some(id.clone()), Some(t.s3.scale(-i)), Some(t.s2.scale(i))],
        [Some(t.s2.clone()), Some(t.s3.scale(i)), Some(id.clone()), Some(t.s1.scale(-i))],
        [Some(t.s3.clone()), Some(t.s2.scale(-i)), Some(t.s1.scale(i)), Some(id)],
    ]);
    let sv = t.s.value();
    raw.scale(Complex64::new(1.0 / (sv * (sv + 1.0)), 0.0))
}

/// Skew-hermitian part of the split S = T1 + T2: first row (0, S1, S2, S3),
/// first column negated, all other blocks zero.
pub fn t1_matrix(t: &SpinTriple) -> CMatrix {
    let d = t.dimension();
    blocks4(d, [
        [None, Some(t.s1.clone()), Some(t.s2.clone()), Some(t.s3.clone())],
        [Some(-&t.s1), None, None, None],
        [Some(-&t.s2), None, None, None],
        [Some(-&t.s3), None, None, None],
    ])
}

/// Hermitian part of the split S = T1 + T2: the purely spatial blocks.
pub fn t2_matrix(t: &SpinTriple) -> CMatrix {
    let d = t.dimension();
    let i = Complex64::i();
    blocks4(d, [
        [None, None, None, None],
        [None, None, Some(t.s3.scale(-i)), Some(t.s2.scale(i))],
        [None, Some(t.s3.scale(i)), None, Some(t.s1.scale(-i))],
        [None, Some(t.s2.scale(-i)), Some(t.s1.scale(i)), None],
    ])
}

/// Closed form of T3 = [T1, T2]: like T1 but with the first row negated too.
/// The equality with the computed commutator is a check in
/// [`verify_t_algebra`], not an assumption.
pub fn t3_matrix(t: &SpinTriple) -> CMatrix {
    let d = t.dimension();
    blocks4(d, [
        [None, Some(-&t.s1), Some(-&t.s2), Some(-&t.s3)],
        [Some(-&t.s1), None, None, None],
        [Some(-&t.s2), None, None, None],
        [Some(-&t.s3), None, None, None],
    ])
}

/// The bundled operator family for one spin value.
#[derive(Clone, Debug)]
pub struct LubanskiMatrices {
    pub spin: HalfInteger,
    pub s: CMatrix,
    pub s_inv: CMatrix,
    pub t1: CMatrix,
    pub t2: CMatrix,
    pub t3: CMatrix,
}

impl LubanskiMatrices {
    pub fn new(t: &SpinTriple) -> Self {
        LubanskiMatrices {
            spin: t.s,
            s: s_matrix(t),
            s_inv: s_inverse(t),
            t1: t1_matrix(t),
            t2: t2_matrix(t),
            t3: t3_matrix(t),
        }
    }
}

/// W^mu = sum_{nu,rho,lambda} epsilon^{mu nu rho lambda} S_{rho lambda} p_nu,
/// one (2s+1)-dimensional matrix per mu, where S_{rho lambda} is the
/// (rho, lambda) block of [`s_matrix`].
pub fn w_matrices(t: &SpinTriple, p: &FourMomentum) -> [CMatrix; 4] {
    let d = t.dimension();
    let s = s_matrix(t);
    let block = |rho: usize, lam: usize| s.block(rho * d, lam * d, d, d);

    let mut w = [(); 4].map(|_| CMatrix::zeros(d, d));
    for (mu, w_mu) in w.iter_mut().enumerate() {
        for nu in 0..4 {
            for rho in 0..4 {
                for lam in 0..4 {
                    let sign = levi_civita([mu, nu, rho, lam]);
                    if sign == 0 {
                        continue;
                    }
                    let factor = Complex64::new(
                        EPSILON_0123 * sign as f64 * p.components[nu],
                        0.0,
                    );
                    if factor == Complex64::ZERO {
                        continue;
                    }
                    *w_mu = &*w_mu + &block(rho, lam).scale(factor);
                }
            }
        }
    }
    w
}

/// Outcome of the Casimir computation C = sum_mu W_mu W^mu with
/// W_mu = g_mu_mu W^mu.
#[derive(Clone, Debug)]
pub struct CasimirReport {
    /// tr(C)/dim, the candidate scalar.
    pub scalar: Complex64,
    /// max-abs of C - scalar*I.
    pub off_identity_residual: f64,
    /// p.p in the (-,+,+,+) metric.
    pub momentum_square: f64,
    /// scalar / (p.p); absent when the momentum is lightlike at `tol`.
    pub ratio: Option<f64>,
    /// CASIMIR_NORMALIZATION * s(s+1) * (p.p).
    pub predicted_scalar: f64,
    /// |p.p| <= tol * (1 + |p|^2): the ratio is then undefined and only the
    /// scalar-multiple structure is checked.
    pub lightlike: bool,
    pub checks: Vec<Check>,
}

impl CasimirReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Computes C = sum_mu g_mu_mu (W^mu)^2 and checks that it is a scalar
/// multiple of the identity with scalar CASIMIR_NORMALIZATION * s(s+1) * p.p.
pub fn casimir(t: &SpinTriple, p: &FourMomentum, tol: f64) -> CasimirReport {
    let d = t.dimension();
    let w = w_matrices(t, p);
    let mut c = CMatrix::zeros(d, d);
    for mu in 0..4 {
        let sq = w[mu].matmul(&w[mu]);
        c = &c + &sq.scale(Complex64::new(METRIC_DIAG[mu], 0.0));
    }

    let scalar = c.trace() / Complex64::new(d as f64, 0.0);
    let off_identity_residual = c.max_abs_diff(&CMatrix::identity(d).scale(scalar));

    let pp = minkowski_dot(p, p);
    let lightlike = pp.abs() <= tol * (1.0 + p.euclidean_norm_sq());
    let sv = t.s.value();
    let predicted_scalar = CASIMIR_NORMALIZATION * sv * (sv + 1.0) * pp;

    let mut checks = vec![Check::new("casimir_scalar_multiple_of_identity", off_identity_residual, tol)];
    let ratio = if lightlike {
        None
    } else {
        let rel = (scalar - predicted_scalar).norm() / (1.0 + predicted_scalar.abs());
        checks.push(Check::new("casimir_scalar_value", rel, tol));
        Some(scalar.re / pp)
    };

    CasimirReport {
        scalar,
        off_identity_residual,
        momentum_square: pp,
        ratio,
        predicted_scalar,
        lightlike,
        checks,
    }
}

/// Closed-form right-hand side of [T3, T1]: upper-left block 2s(s+1) I,
/// lower-right 3x3 block of -2 Sj Sk products.
fn comm_t3_t1_closed_form(t: &SpinTriple) -> CMatrix {
    let d = t.dimension();
    let sv = t.s.value();
    let mut m = CMatrix::zeros(4 * d, 4 * d);
    m.set_block(0, 0, &CMatrix::identity(d).scale(Complex64::new(2.0 * sv * (sv + 1.0), 0.0)));
    let s = [&t.s1, &t.s2, &t.s3];
    for j in 0..3 {
        for k in 0..3 {
            let prod = s[j].matmul(s[k]).scale(Complex64::new(-2.0, 0.0));
            m.set_block((j + 1) * d, (k + 1) * d, &prod);
        }
    }
    m
}

/// Closed-form right-hand side of [S, S*]: first row and column hold
/// 2i[S2,S3], 2i[S3,S1], 2i[S1,S2].
fn s_sstar_closed_form(t: &SpinTriple) -> CMatrix {
    let d = t.dimension();
    let two_i = Complex64::new(0.0, 2.0);
    let c1 = commutator(&t.s2, &t.s3).scale(two_i);
    let c2 = commutator(&t.s3, &t.s1).scale(two_i);
    let c3 = commutator(&t.s1, &t.s2).scale(two_i);
    blocks4(d, [
        [None, Some(c1.clone()), Some(c2.clone()), Some(c3.clone())],
        [Some(c1), None, None, None],
        [Some(c2), None, None, None],
        [Some(c3), None, None, None],
    ])
}

/// Residuals for the full operator algebra at one spin: the structural facts
/// (S = T1 + T2, skew-hermiticity/hermiticity, separate normality, the
/// closed-form T3 and inverse) and the commutator identities generated by
/// T1 and T2.
pub fn verify_t_algebra(t: &SpinTriple, tol: f64) -> IdentityReport {
    let m = LubanskiMatrices::new(t);
    let dim = 4 * t.dimension();
    let sv = t.s.value();
    let mut report = IdentityReport::default();

    report.push("s_decomposition", m.s.max_abs_diff(&(&m.t1 + &m.t2)), tol);
    report.push("t1_skew_hermitian", m.t1.adjoint().max_abs_diff(&-&m.t1), tol);
    report.push("t2_hermitian", m.t2.adjoint().max_abs_diff(&m.t2), tol);
    report.push("t1_normal", commutator(&m.t1, &m.t1.adjoint()).max_abs(), tol);
    report.push("t2_normal", commutator(&m.t2, &m.t2.adjoint()).max_abs(), tol);
    report.push("s_inverse", m.s.matmul(&m.s_inv).max_abs_diff(&CMatrix::identity(dim)), tol);

    report.push("t3_closed_form", commutator(&m.t1, &m.t2).max_abs_diff(&m.t3), tol);
    report.push("comm_t3_t2", commutator(&m.t3, &m.t2).max_abs_diff(&m.t1), tol);

    let c31 = commutator(&m.t3, &m.t1);
    report.push("comm_t3_t1_block_form", c31.max_abs_diff(&comm_t3_t1_closed_form(t)), tol);
    report.push(
        "double_comm_t3t1_t1",
        commutator(&c31, &m.t1).max_abs_diff(&m.t3.scale(Complex64::new(-4.0 * sv * (sv + 1.0), 0.0))),
        tol,
    );
    report.push("double_comm_t3t1_t2", commutator(&c31, &m.t2).max_abs(), tol);

    let c32 = commutator(&m.t3, &m.t2);
    report.push("double_comm_t3t2_t1", commutator(&c32, &m.t1).max_abs(), tol);
    report.push("double_comm_t3t2_t2", commutator(&c32, &m.t2).max_abs_diff(&m.t3), tol);

    report.push("anticomm_t1_t2", anticommutator(&m.t1, &m.t2).max_abs_diff(&-&m.t1), tol);

    let ss = commutator(&m.s, &m.s.adjoint());
    report.push("s_sstar_comm", ss.max_abs_diff(&m.t3.scale(Complex64::new(2.0, 0.0))), tol);
    report.push("s_sstar_block_form", ss.max_abs_diff(&s_sstar_closed_form(t)), tol);

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::nonnormality;
    use crate::spin::make_spin_matrices;

    fn triple(twice: i64) -> SpinTriple {
        make_spin_matrices(HalfInteger::from_twice(twice)).unwrap()
    }

    #[test]
    fn levi_civita_basics() {
        assert_eq!(levi_civita([0, 1, 2, 3]), 1);
        assert_eq!(levi_civita([1, 0, 2, 3]), -1);
        assert_eq!(levi_civita([3, 2, 1, 0]), 1);
        assert_eq!(levi_civita([0, 0, 2, 3]), 0);
        let total: i32 = (0..4)
            .flat_map(|a| (0..4).flat_map(move |b| (0..4).flat_map(move |c| (0..4).map(move |d| levi_civita([a, b, c, d])))))
            .map(i32::abs)
            .sum();
        assert_eq!(total, 24);
    }

    #[test]
    fn minkowski_examples() {
        let e0 = FourMomentum::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(minkowski_dot(&e0, &e0), -1.0);
        let light = FourMomentum::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(minkowski_dot(&light, &light), 0.0);
        let spatial = FourMomentum::new(0.0, 3.0, 4.0, 0.0);
        assert_eq!(minkowski_dot(&spatial, &spatial), 25.0);
    }

    #[test]
    fn block_placement_at_spin_one_half() {
        let t = triple(1);
        let s = s_matrix(&t);
        assert_eq!(s.rows(), 8);
        assert!(s.block(0, 2, 2, 2).approx_eq(&t.s1, 0.0));
        assert!(s.block(2, 0, 2, 2).approx_eq(&-&t.s1, 0.0));
        assert!(s.block(2, 4, 2, 2).approx_eq(&t.s3.scale(-Complex64::i()), 0.0));
        assert!(s.trace().norm() < 1e-15);
    }

    #[test]
    fn s_matrix_is_traceless_and_trace_cubed_matches() {
        let t = triple(2);
        let s = s_matrix(&t);
        assert!(s.trace().norm() < 1e-13);
        let tr3 = s.matrix_power(3).trace();
        assert!((tr3 - Complex64::new(12.0, 0.0)).norm() < 1e-12, "tr(S^3) = {tr3}");
    }

    #[test]
    fn inverse_blocks_and_product() {
        for twice in [1, 4] {
            let t = triple(twice);
            let d = t.dimension();
            let s = s_matrix(&t);
            let inv = s_inverse(&t);
            let sv = t.s.value();
            let expected_00 = CMatrix::identity(d).scale(Complex64::new(-1.0 / (sv * (sv + 1.0)), 0.0));
            assert!(inv.block(0, 0, d, d).approx_eq(&expected_00, 1e-15));
            let prod = s.matmul(&inv);
            assert!(prod.approx_eq(&CMatrix::identity(4 * d), 1e-12), "residual {}", prod.max_abs_diff(&CMatrix::identity(4 * d)));
        }
    }

    #[test]
    fn split_reassembles_s() {
        for twice in 1..=6 {
            let t = triple(twice);
            let sum = &t1_matrix(&t) + &t2_matrix(&t);
            assert!(sum.approx_eq(&s_matrix(&t), 0.0));
        }
    }

    #[test]
    fn t1_is_skew_hermitian_at_spin_three_halves() {
        let t = triple(3);
        let t1 = t1_matrix(&t);
        assert!(t1.adjoint().approx_eq(&-&t1, 0.0));
    }

    #[test]
    fn t3_matches_commutator_at_spin_one_half() {
        let t = triple(1);
        let computed = commutator(&t1_matrix(&t), &t2_matrix(&t));
        assert!(computed.approx_eq(&t3_matrix(&t), 1e-12));
    }

    #[test]
    fn t_algebra_passes_at_tight_tolerance() {
        for twice in [1, 5] {
            let t = triple(twice);
            let report = verify_t_algebra(&t, 1e-12);
            assert!(report.all_pass(), "failures: {:?}", report.failed().collect::<Vec<_>>());
        }
    }

    #[test]
    fn double_commutator_residual_is_tiny_at_spin_one() {
        let t = triple(2);
        let report = verify_t_algebra(&t, 1e-13);
        assert!(report.find("double_comm_t3t2_t2").unwrap().residual < 1e-13);
    }

    #[test]
    fn s_is_nonnormal() {
        for twice in 1..=6 {
            let t = triple(twice);
            assert!(nonnormality(&s_matrix(&t)) > 0.1);
        }
    }

    #[test]
    fn w_vanishes_at_zero_momentum() {
        let t = triple(3);
        let w = w_matrices(&t, &FourMomentum::new(0.0, 0.0, 0.0, 0.0));
        for wm in &w {
            assert_eq!(wm.max_abs(), 0.0);
        }
    }

    #[test]
    fn w_for_timelike_momentum_is_proportional_to_spin() {
        // p = (1,0,0,0): only nu = 0 survives, so W^0 = 0 and W^i = 2i p0 Si.
        let t = triple(1);
        let w = w_matrices(&t, &FourMomentum::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!(w[0].max_abs(), 0.0);
        let two_i = Complex64::new(0.0, 2.0);
        assert!(w[1].approx_eq(&t.s1.scale(two_i), 1e-15));
        assert!(w[2].approx_eq(&t.s2.scale(two_i), 1e-15));
        assert!(w[3].approx_eq(&t.s3.scale(two_i), 1e-15));
    }

    #[test]
    fn w0_projects_spin_along_momentum() {
        // p = (0,1,0,0): W^0 = -2i S1.
        let t = triple(1);
        let w = w_matrices(&t, &FourMomentum::new(0.0, 1.0, 0.0, 0.0));
        assert!(w[0].approx_eq(&t.s1.scale(Complex64::new(0.0, -2.0)), 1e-15));
    }

    #[test]
    fn casimir_is_scalar_multiple_at_spin_one_half() {
        let t = triple(1);
        let report = casimir(&t, &FourMomentum::new(1.0, 0.0, 0.0, 0.0), 1e-10);
        assert!(report.all_pass(), "{:?}", report.checks);
        assert!(!report.lightlike);
        let ratio = report.ratio.unwrap();
        assert!((ratio - CASIMIR_NORMALIZATION * 0.5 * 1.5).abs() < 1e-12, "ratio {ratio}");
    }

    #[test]
    fn casimir_ratio_is_momentum_independent() {
        let t = triple(4);
        let r1 = casimir(&t, &FourMomentum::new(1.0, 0.2, -0.3, 0.5), 1e-10);
        let r2 = casimir(&t, &FourMomentum::new(2.0, -1.0, 0.4, 0.1), 1e-10);
        let a = r1.ratio.unwrap();
        let b = r2.ratio.unwrap();
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn casimir_flags_lightlike_momentum() {
        let t = triple(2);
        let report = casimir(&t, &FourMomentum::new(1.0, 1.0, 0.0, 0.0), 1e-10);
        assert!(report.lightlike);
        assert!(report.ratio.is_none());
        // C still collapses to (numerically zero) scalar times identity
        assert!(report.checks[0].pass);
        assert!(report.scalar.norm() < 1e-12);
    }
}

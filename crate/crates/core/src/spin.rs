//! Spin matrices S1, S2, S3 for arbitrary spin and their defining identities.
//!
//! The matrices are built by the standard ladder-operator construction in the
//! S3 eigenbasis ordered m = s, s-1, ..., -s, so S3 = diag(s, ..., -s) and the
//! raising operator lives on the first superdiagonal. They satisfy
//!
//!   [S1,S2] = iS3 (cyclic),    S1^2 + S2^2 + S3^2 = s(s+1) I,
//!   tr(Sj^2) = s(s+1)(2s+1)/3,  tr(Sj Sk) = 0 for j != k,
//!
//! all to floating-point accuracy; [`verify_spin_identities`] measures the
//! residuals instead of trusting the construction.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{commutator, CMatrix};
use crate::report::IdentityReport;

/// Default tolerance for residual checks. Residuals at desk-scale dimensions
/// stay below 1e-12, so this leaves two orders of margin without masking
/// real errors.
pub const DEFAULT_TOL: f64 = 1e-10;

/// An exact half-integer stored as twice its value, so spin 3/2 is `twice = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub const fn twice(&self) -> i64 {
        self.twice
    }

    pub fn value(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// 2s + 1, the dimension of the spin-s representation.
    pub fn dimension(&self) -> usize {
        assert!(self.twice >= 0, "dimension of a negative half-integer");
        (self.twice + 1) as usize
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    /// Accepts an integer ("2") or a half-integer written over 2 ("3/2").
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::SpinParse { input: s.to_string() };
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            if den.trim() != "2" {
                return Err(err());
            }
            let twice: i64 = num.trim().parse().map_err(|_| err())?;
            Ok(HalfInteger::from_twice(twice))
        } else {
            let whole: i64 = t.parse().map_err(|_| err())?;
            Ok(HalfInteger::from_twice(2 * whole))
        }
    }
}

/// The validated spin-s triple (S1, S2, S3), each (2s+1) x (2s+1).
#[derive(Clone, Debug)]
pub struct SpinTriple {
    pub s: HalfInteger,
    pub s1: CMatrix,
    pub s2: CMatrix,
    pub s3: CMatrix,
}

impl SpinTriple {
    pub fn dimension(&self) -> usize {
        self.s.dimension()
    }

    /// S1^2 + S2^2 + S3^2.
    pub fn casimir(&self) -> CMatrix {
        let sq = |m: &CMatrix| m.matmul(m);
        &(&sq(&self.s1) + &sq(&self.s2)) + &sq(&self.s3)
    }
}

/// Ladder-operator construction of the spin matrices. Rejects twice-spin < 1.
pub fn make_spin_matrices(s: HalfInteger) -> Result<SpinTriple> {
    if s.twice() < 1 {
        return Err(Error::invalid_spin(s));
    }
    let d = s.dimension();
    let sv = s.value();

    // Raising operator: <m+1| S+ |m> = sqrt(s(s+1) - m(m+1)), basis m descending.
    let mut s_plus = CMatrix::zeros(d, d);
    for k in 0..d - 1 {
        let m = sv - (k + 1) as f64;
        s_plus[(k, k + 1)] = Complex64::new((sv * (sv + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let s_minus = s_plus.adjoint();

    let s1 = (&s_plus + &s_minus).scale(Complex64::new(0.5, 0.0));
    let s2 = (&s_plus - &s_minus).scale(Complex64::new(0.0, -0.5));
    let s3 = CMatrix::diag(
        &(0..d)
            .map(|k| Complex64::new(sv - k as f64, 0.0))
            .collect::<Vec<_>>(),
    );

    Ok(SpinTriple { s, s1, s2, s3 })
}

/// Residuals for the defining identities of a spin triple:
/// the three commutators, the Casimir sum, the squared-trace value,
/// vanishing mixed traces, and vanishing odd-power traces up to 7.
pub fn verify_spin_identities(t: &SpinTriple, tol: f64) -> IdentityReport {
    let sv = t.s.value();
    let d = t.dimension();
    let i = Complex64::i();
    let mut report = IdentityReport::default();

    let cyclic = [
        ("comm_s1_s2", &t.s1, &t.s2, &t.s3),
        ("comm_s2_s3", &t.s2, &t.s3, &t.s1),
        ("comm_s3_s1", &t.s3, &t.s1, &t.s2),
    ];
    for (name, a, b, c) in cyclic {
        let residual = commutator(a, b).max_abs_diff(&c.scale(i));
        report.push(name, residual, tol);
    }

    let target = CMatrix::identity(d).scale(Complex64::new(sv * (sv + 1.0), 0.0));
    report.push("casimir_sum", t.casimir().max_abs_diff(&target), tol);

    let expected_sq = sv * (sv + 1.0) * d as f64 / 3.0;
    let trace_sq_residual = [&t.s1, &t.s2, &t.s3]
        .iter()
        .map(|m| (m.matmul(m).trace() - expected_sq).norm())
        .fold(0.0, f64::max);
    report.push("trace_square", trace_sq_residual, tol);

    let mixed = [(&t.s1, &t.s2), (&t.s2, &t.s3), (&t.s3, &t.s1)];
    let mixed_residual = mixed
        .iter()
        .map(|(a, b)| a.matmul(b).trace().norm())
        .fold(0.0, f64::max);
    report.push("mixed_traces", mixed_residual, tol);

    for n in [1u32, 3, 5, 7] {
        let residual = [&t.s1, &t.s2, &t.s3]
            .iter()
            .map(|m| m.matrix_power(n).trace().norm())
            .fold(0.0, f64::max);
        report.push(format!("odd_trace_pow{n}"), residual, tol);
    }

    report
}

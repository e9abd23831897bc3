//! Dense complex matrices with value semantics.
//!
//! `CMatrix` is the carrier type for every operator in this crate. Storage is
//! row-major `Complex64` and all kernels are plain O(n^3) loops; dimensions
//! stay desk-scale. Equality is tolerance-based through [`CMatrix::approx_eq`]
//! and [`CMatrix::max_abs_diff`] — there is deliberately no bitwise `==`.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

#[derive(Clone)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = CMatrix::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from nested rows; panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flatten().copied().collect();
        CMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Single-column matrix from a vector.
    pub fn column(v: &[Complex64]) -> Self {
        CMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn scale(&self, z: Complex64) -> CMatrix {
        let data = self.data.iter().map(|&w| w * z).collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMatrix {
        let data = self.data.iter().map(|z| z.conj()).collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// M^n by repeated multiplication; `matrix_power(M, 0)` is the identity.
    pub fn matrix_power(&self, n: u32) -> CMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut out = CMatrix::identity(self.rows);
        for _ in 0..n {
            out = out.matmul(self);
        }
        out
    }

    /// Kronecker product with the blockwise layout A[i,j] * B.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> CMatrix {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols, "block out of range");
        CMatrix::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, b: &CMatrix) {
        assert!(row0 + b.rows <= self.rows && col0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(row0 + i, col0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Tolerance-based equality: max-abs entry difference at most `tol`.
    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.max_abs_diff(other) <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, other: &CMatrix) -> CMatrix {
        self.matmul(other)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-Complex64::ONE)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// AB - BA.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert!(a.is_square() && b.is_square() && a.rows() == b.rows(), "commutator needs square matrices of equal dimension");
    &a.matmul(b) - &b.matmul(a)
}

/// AB + BA.
pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert!(a.is_square() && b.is_square() && a.rows() == b.rows(), "anticommutator needs square matrices of equal dimension");
    &a.matmul(b) + &b.matmul(a)
}

/// Max-abs entry of [M, M*]; zero exactly for normal matrices.
pub fn nonnormality(m: &CMatrix) -> f64 {
    commutator(m, &m.adjoint()).max_abs()
}

/// Conjugate-linear dot product, conjugating the first argument.
pub fn vec_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_neutral() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(0.0, -1.0)],
            vec![c(3.0, 0.0), c(0.5, 0.5)],
        ]);
        let id = CMatrix::identity(2);
        assert!(a.matmul(&id).approx_eq(&a, 0.0));
        assert!(id.matmul(&a).approx_eq(&a, 0.0));
    }

    #[test]
    fn matrix_power_conventions() {
        let a = CMatrix::from_rows(&[vec![c(0.0, 1.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(2.0, 0.0)]]);
        assert!(a.matrix_power(0).approx_eq(&CMatrix::identity(2), 0.0));
        assert!(a.matrix_power(1).approx_eq(&a, 0.0));
        assert!(a.matrix_power(3).approx_eq(&a.matmul(&a).matmul(&a), 1e-14));
    }

    #[test]
    fn kron_identity_factor_is_block_diagonal() {
        let b = CMatrix::from_rows(&[vec![c(1.0, 1.0), c(2.0, 0.0)], vec![c(0.0, 3.0), c(4.0, 0.0)]]);
        let k = CMatrix::identity(2).kron(&b);
        assert_eq!(k.rows(), 4);
        assert!(k.block(0, 0, 2, 2).approx_eq(&b, 0.0));
        assert!(k.block(2, 2, 2, 2).approx_eq(&b, 0.0));
        assert_eq!(k.block(0, 2, 2, 2).max_abs(), 0.0);
    }

    #[test]
    fn kron_of_basis_vectors() {
        let e0 = CMatrix::column(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let e1 = CMatrix::column(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let k = e0.kron(&e1);
        let expect = CMatrix::column(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(k.approx_eq(&expect, 0.0));
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 2.0), c(0.0, -1.0)], vec![c(3.0, 0.0), c(0.5, 0.5)]]);
        assert_eq!(commutator(&a, &a).max_abs(), 0.0);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 2.0), c(0.0, -1.0)], vec![c(3.0, 4.0), c(0.5, 0.5)]]);
        let ad = a.adjoint();
        assert_eq!(ad[(0, 1)], c(3.0, -4.0));
        assert_eq!(ad[(1, 0)], c(0.0, 1.0));
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn matmul_rejects_mismatched_shapes() {
        let a = CMatrix::zeros(2, 3);
        let b = CMatrix::zeros(2, 3);
        let _ = a.matmul(&b);
    }

    #[test]
    fn trace_of_kron_is_product_of_traces() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 1.0), c(2.0, 0.0)], vec![c(0.0, 3.0), c(4.0, -1.0)]]);
        let b = CMatrix::from_rows(&[vec![c(0.5, 0.0), c(1.0, 2.0)], vec![c(0.0, 0.0), c(-1.0, 1.0)]]);
        let lhs = a.kron(&b).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-14);
    }
}

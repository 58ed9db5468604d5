//! Dense complex matrix kernel.
//!
//! Row-major `ComplexMatrix` with the handful of operations the rest of the
//! crate needs: products, adjoints, Kronecker products, Hermitian
//! eigendecomposition, PSD square roots, partial traces and block extraction.

mod density;
mod eigen;

pub use density::{extract_blocks, BlockSet, DensityMatrix};
pub use eigen::{hermitian_eig, psd_sqrt};

use crate::error::{Error, Result};
use num_complex::Complex;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

/// Complex scalar used throughout the crate.
pub type Complex64 = Complex<f64>;

pub(crate) const ZERO: Complex64 = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex::new(1.0, 0.0);

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. Fails on count mismatch or non-finite entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        let m = Self { rows, cols, entries };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Diagonal matrix from real values.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, 0.0);
        }
        m
    }

    /// Rank-1 projector |v><v|.
    pub fn projector(v: &[Complex64]) -> Self {
        let d = v.len();
        Self::from_fn(d, d, |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Matrix product.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Tr(A B), evaluated without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    /// Hermiticity residual ||M - M'||_F.
    pub fn hermitian_residual(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)].conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// (M + M')/2. For a Hermitian input this is the identity map.
    pub fn symmetrize(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// ||U'U - I||_F, the unitarity residual.
    pub fn unitarity_residual(&self) -> f64 {
        let gram = self.adjoint().matmul(self);
        let mut acc = 0.0;
        for i in 0..gram.rows {
            for j in 0..gram.cols {
                let expect = if i == j { ONE } else { ZERO };
                acc += (gram[(i, j)] - expect).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Kronecker (tensor) product, A-major: (A⊗B)[(i·rB+k),(j·cB+l)] = A[i,j]·B[k,l].
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .ok_or(Error::SizeOverflow(self.rows, other.rows))?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .ok_or(Error::SizeOverflow(self.cols, other.cols))?;
        rows.checked_mul(cols).ok_or(Error::SizeOverflow(rows, cols))?;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(other)
    }
}

/// Standard Pauli matrices (σ_x, σ_y, σ_z).
pub fn pauli_matrices() -> [ComplexMatrix; 3] {
    let i = Complex::new(0.0, 1.0);
    let sx = ComplexMatrix::new(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
    let sy = ComplexMatrix::new(2, 2, vec![ZERO, -i, i, ZERO]).unwrap();
    let sz = ComplexMatrix::new(2, 2, vec![ONE, ZERO, ZERO, -ONE]).unwrap();
    [sx, sy, sz]
}

/// Squared 2-norm of a complex vector.
pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Inner product <a|b> (conjugate-linear in the first argument).
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Tensor product of two state vectors.
pub fn tensor(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Checks that `basis` is a set of mutually orthonormal vectors, returning the
/// worst Gram residual.
pub fn orthonormality_residual(basis: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let expect = if i == j { ONE } else { ZERO };
            worst = worst.max((inner(a, b) - expect).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex::new(re, im)
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        let i3 = ComplexMatrix::identity(3);
        let i6 = i2.kron(&i3).unwrap();
        assert_eq!(i6, ComplexMatrix::identity(6));
    }

    #[test]
    fn kron_diag_projector() {
        let p = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let got = p.kron(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(got, ComplexMatrix::from_diagonal(&[1.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_scalar_b() {
        let a = ComplexMatrix::new(2, 2, vec![ZERO, ONE, ZERO, ZERO]).unwrap();
        let got = a.kron(&ComplexMatrix::identity(1)).unwrap();
        assert_eq!(got, a);
    }

    #[test]
    fn kron_entry_convention() {
        // (A⊗B)[(i·rB+k),(j·cB+l)] = A[i,j]·B[k,l]
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c((i * 2 + j) as f64, 1.0));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c(0.5, (i * 3 + j) as f64));
        let k = a.kron(&b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..3 {
                    for q in 0..3 {
                        assert_eq!(k[(i * 3 + p, j * 3 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_and_trace() {
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, 2.0), c(3.0, -1.0), c(0.0, 4.0), c(5.0, 0.0)])
            .unwrap();
        let a = m.adjoint();
        assert_eq!(a[(0, 1)], c(0.0, -4.0));
        assert_eq!(a[(1, 0)], c(3.0, 1.0));
        assert_eq!(m.trace(), c(6.0, 2.0));
    }

    #[test]
    fn matmul_against_hand_product() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0), ZERO]).unwrap();
        let b = ComplexMatrix::new(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
        let p = a.matmul(&b);
        assert_eq!(p[(0, 0)], c(0.0, 1.0));
        assert_eq!(p[(0, 1)], c(1.0, 0.0));
        assert_eq!(p[(1, 0)], ZERO);
        assert_eq!(p[(1, 1)], c(2.0, 0.0));
    }

    #[test]
    fn trace_product_matches_matmul() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64 - j as f64, (i * j) as f64));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c((i + j) as f64, 0.5));
        let direct = a.trace_product(&b);
        let via_product = a.matmul(&b).trace();
        assert!((direct - via_product).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        let err = ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]);
        assert!(matches!(err, Err(Error::NonFinite)));
    }

    #[test]
    fn rejects_bad_entry_count() {
        let err = ComplexMatrix::new(2, 2, vec![ZERO; 3]);
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn pauli_algebra() {
        let [sx, sy, sz] = pauli_matrices();
        // σ_x σ_y = i σ_z
        let prod = sx.matmul(&sy);
        let expect = sz.scale(c(0.0, 1.0));
        assert!((&prod - &expect).frobenius_norm() < 1e-15);
        for s in [&sx, &sy, &sz] {
            assert!(s.hermitian_residual() < 1e-15);
            assert!((s.matmul(s).trace() - c(2.0, 0.0)).norm() < 1e-15);
        }
    }
}

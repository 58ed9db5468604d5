//! Hermitian eigendecomposition and PSD square root.
//!
//! The eigensolver tries nalgebra's Householder tridiagonalization + implicit
//! QL first and falls back to a cyclic complex Jacobi when that path breaks
//! down (its Householder step divides by a zero column norm on exactly
//! degenerate inputs like rank-1 projectors, yielding NaN). Eigenvalues come
//! back in ascending order.

use super::{Complex64, ComplexMatrix};
use crate::error::{Error, Result};
use nalgebra::DMatrix;

const HERMITIAN_REL_TOL: f64 = 1e-10;

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Cyclic Jacobi for a Hermitian complex matrix: annihilate a_pq with the
/// unitary [[c, s̄], [−s, c]], c real, until a full sweep applies no rotation.
/// Returns (diagonal, V) with A = V·diag·V†, unsorted.
fn jacobi_hermitian(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = a.rows();
    let mut a = a.clone();
    let mut v = ComplexMatrix::identity(n);
    const MAX_SWEEPS: usize = 60;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                let small = 0.5 * f64::EPSILON * (a[(p, p)].re.abs() + a[(q, q)].re.abs());
                if r <= small {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                // tan 2θ = 2r/(a_pp − a_qq); stable smaller root for tan θ.
                let zeta = (a[(p, p)].re - a[(q, q)].re) / (2.0 * r);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (zeta * zeta + 1.0).sqrt())
                } else {
                    -1.0 / (-zeta + (zeta * zeta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = apq.conj() * (t * c / r);
                // Row update A ← R A, then column update A ← A R†.
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c + aqj * s.conj();
                    a[(q, j)] = aqj * c - apj * s;
                }
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c + aiq * s;
                    a[(i, q)] = aiq * c - aip * s.conj();
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                // Eigenvector columns: V ← V R†.
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c + viq * s;
                    v[(i, q)] = viq * c - vip * s.conj();
                }
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the unitary whose k-th column is
/// the k-th eigenvector, so that `M = V diag(λ) V†`. Inputs within
/// `1e-10·max(1,‖M‖_F)` of Hermitian are symmetrized first; anything further
/// off is rejected.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let tol = HERMITIAN_REL_TOL * m.frobenius_norm().max(1.0);
    let residual = m.hermitian_residual();
    if residual > tol {
        return Err(Error::NotHermitian { residual, tol });
    }
    let sym = m.symmetrize();
    let d = m.rows();

    let eig = to_nalgebra(&sym).symmetric_eigen();
    let finite = eig.eigenvalues.iter().all(|v| v.is_finite())
        && eig.eigenvalues.len() == d
        && eig.eigenvectors.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    let (raw_values, raw_vectors) = if finite {
        (
            eig.eigenvalues.iter().copied().collect::<Vec<f64>>(),
            ComplexMatrix::from_fn(d, d, |i, j| eig.eigenvectors[(i, j)]),
        )
    } else {
        jacobi_hermitian(&sym)
    };

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| raw_values[a].total_cmp(&raw_values[b]));
    let values: Vec<f64> = order.iter().map(|&k| raw_values[k]).collect();
    let vectors = ComplexMatrix::from_fn(d, d, |i, j| raw_vectors[(i, order[j])]);
    Ok((values, vectors))
}

/// Hermitian PSD square root of a density matrix's backing matrix.
///
/// Eigenvalues in `[-1e-12, 0)` are clamped to zero before the square root;
/// anything below `-1e-12` is rejected as not a state. Eigenvalues below the
/// numerical-rank threshold d·ε·λ_max are also treated as zero: the square
/// root would otherwise amplify eigensolver noise of order 1e-16 on a
/// rank-deficient state into 1e-8 amplitudes. The result is Hermitian by
/// construction (upper triangle computed, lower mirrored).
pub fn psd_sqrt_matrix(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eig(m)?;
    let rank_floor =
        m.rows() as f64 * f64::EPSILON * values.last().copied().unwrap_or(0.0).max(0.0);
    let mut roots = Vec::with_capacity(values.len());
    for &v in &values {
        if v < -1e-12 {
            return Err(Error::NotPositive { eigenvalue: v });
        }
        roots.push(if v < rank_floor { 0.0 } else { v.sqrt() });
    }
    let d = m.rows();
    let mut s = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += vectors[(i, k)] * vectors[(j, k)].conj() * roots[k];
            }
            if i == j {
                s[(i, i)] = Complex64::new(acc.re, 0.0);
            } else {
                s[(i, j)] = acc;
                s[(j, i)] = acc.conj();
            }
        }
    }
    Ok(s)
}

/// PSD square root of a validated density matrix.
pub fn psd_sqrt(rho: &super::DensityMatrix) -> Result<ComplexMatrix> {
    psd_sqrt_matrix(rho.mat())
}

//! The skew-information quantum correlation Q(ρ_AB).
//!
//! Q is the minimum over rank-1 projector bases {|k⟩} of subsystem A of
//! `-½ Σ_k Tr[√ρ, K_k]²` with `K_k = |k⟩⟨k|⊗1_n`. Three routes compute it:
//!
//! * [`q_general`]: reduce to joint approximate diagonalization of the
//!   blocks of √ρ and maximize the squared diagonals (any dimensions);
//! * [`q_qubit_qudit`]: closed form `½(1 − υ_max)` from the 3×3 correlation
//!   matrix T (m = 2);
//! * [`q_pure`]: `1 − Tr ϱ_r²` at the Schmidt basis (pure states).
//!
//! [`quantum_correlation`] dispatches between them.

use crate::error::{Error, Result};
use crate::jad::{jad, JadOptions, JadResult, MatrixSet};
use crate::linalg::{
    extract_blocks, hermitian_eig, orthonormality_residual, pauli_matrices, psd_sqrt, Complex64,
    ComplexMatrix, DensityMatrix,
};

/// Purity above which a state takes the exact pure-state route.
const PURITY_THRESHOLD: f64 = 1.0 - 1e-12;

/// Which route produced a correlation value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    GeneralJad,
    QubitQudit,
    Pure,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::GeneralJad => "general_jad",
            Method::QubitQudit => "qubit_qudit",
            Method::Pure => "pure",
        }
    }
}

/// Quantum correlation value with its optimizing basis.
#[derive(Debug, Clone)]
pub struct CorrelationResult {
    /// Q(ρ_AB) ∈ [0, 1].
    pub q: f64,
    pub method: Method,
    /// The m orthonormal vectors |k⟩ whose projectors attain the minimum.
    pub optimal_basis: Vec<Vec<Complex64>>,
    /// JAD diagnostics when `method == GeneralJad`.
    pub diagnostics: Option<JadResult>,
}

impl CorrelationResult {
    /// Sweeps used by the JAD run, zero for closed-form routes.
    pub fn sweeps_used(&self) -> usize {
        self.diagnostics.as_ref().map_or(0, |d| d.sweeps_used)
    }
}

/// The 3×3 correlation matrix T_ij = Tr[√ρ (σ_i⊗1_n) √ρ (σ_j⊗1_n)] of a
/// qubit-qudit state.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationT {
    t: [[f64; 3]; 3],
}

impl CorrelationT {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.t
    }

    /// Largest eigenvalue with its eigenvector (first index on degeneracy).
    pub fn dominant_eigenpair(&self) -> (f64, [f64; 3]) {
        let m = nalgebra::Matrix3::new(
            self.t[0][0], self.t[0][1], self.t[0][2], self.t[1][0], self.t[1][1], self.t[1][2],
            self.t[2][0], self.t[2][1], self.t[2][2],
        );
        let eig = m.symmetric_eigen();
        let mut idx = 0;
        for k in 1..3 {
            if eig.eigenvalues[k] > eig.eigenvalues[idx] {
                idx = k;
            }
        }
        (
            eig.eigenvalues[idx],
            [
                eig.eigenvectors[(0, idx)],
                eig.eigenvectors[(1, idx)],
                eig.eigenvectors[(2, idx)],
            ],
        )
    }
}

/// Skew information I(ρ, O) = −½ Tr[√ρ, O]² = ‖[√ρ, O]‖_F²/2.
pub fn skew_information(rho: &DensityMatrix, observable: &ComplexMatrix) -> Result<f64> {
    if observable.rows() != rho.dim() || observable.cols() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "observable is {}x{}, state dimension is {}",
            observable.rows(),
            observable.cols(),
            rho.dim()
        )));
    }
    let s = psd_sqrt(rho)?;
    Ok(skew_with_sqrt(&s, observable))
}

fn skew_with_sqrt(sqrt_rho: &ComplexMatrix, observable: &ComplexMatrix) -> f64 {
    let commutator = &sqrt_rho.matmul(observable) - &observable.matmul(sqrt_rho);
    let f = commutator.frobenius_norm();
    0.5 * f * f
}

fn clip_q(q: f64) -> Result<f64> {
    if (-1e-12..0.0).contains(&q) {
        return Ok(0.0);
    }
    if !(0.0..=1.0 + 1e-12).contains(&q) {
        return Err(Error::CorrelationOutOfRange(q));
    }
    Ok(q.min(1.0))
}

/// General route: Q = 1 − (JAD objective over the reduced block set of √ρ).
pub fn q_general(rho: &DensityMatrix, opts: &JadOptions) -> Result<CorrelationResult> {
    let s = psd_sqrt(rho)?;
    let blocks = extract_blocks(&s, rho.dim_a(), rho.dim_b())?;
    let set = MatrixSet::from_blocks(&blocks);
    let result = jad(&set, opts)?;
    let q = clip_q(1.0 - result.objective)?;
    let m = rho.dim_a();
    // |k⟩ is the conjugate of the k-th row of U_o, so that
    // (U A U†)_kk = ⟨k|A|k⟩.
    let basis: Vec<Vec<Complex64>> = (0..m)
        .map(|k| (0..m).map(|a| result.unitary[(k, a)].conj()).collect())
        .collect();
    Ok(CorrelationResult {
        q,
        method: Method::GeneralJad,
        optimal_basis: basis,
        diagnostics: Some(result),
    })
}

/// T_ij = Tr[√ρ (σ_i⊗1_n) √ρ (σ_j⊗1_n)] for m = 2 (σ_1 = σ_x, σ_2 = σ_y,
/// σ_3 = σ_z).
pub fn correlation_matrix_t(rho: &DensityMatrix) -> Result<CorrelationT> {
    if rho.dim_a() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "correlation matrix T needs m = 2, got m = {}",
            rho.dim_a()
        )));
    }
    let s = psd_sqrt(rho)?;
    let ident_b = ComplexMatrix::identity(rho.dim_b());
    let paulis = pauli_matrices();
    let lifted: Vec<ComplexMatrix> = paulis
        .iter()
        .map(|p| p.kron(&ident_b).expect("small fixed sizes"))
        .collect();
    let products: Vec<ComplexMatrix> = lifted.iter().map(|k| s.matmul(k).matmul(&s)).collect();
    let mut t = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let val = products[i].trace_product(&lifted[j]).re;
            t[i][j] = val;
            t[j][i] = val;
        }
    }
    Ok(CorrelationT { t })
}

/// Closed form for m = 2: Q = ½(1 − υ_max) with υ_max the top eigenvalue of
/// T; the optimal projectors are ½(1 ± n̂·σ) for the dominant eigenvector n̂.
pub fn q_qubit_qudit(rho: &DensityMatrix) -> Result<CorrelationResult> {
    let t = correlation_matrix_t(rho)?;
    let (upsilon_max, axis) = t.dominant_eigenpair();
    let q = clip_q(0.5 * (1.0 - upsilon_max))?;
    // Eigenbasis of n̂·σ.
    let [sx, sy, sz] = pauli_matrices();
    let n_sigma = &(&sx.scale(Complex64::new(axis[0], 0.0))
        + &sy.scale(Complex64::new(axis[1], 0.0)))
        + &sz.scale(Complex64::new(axis[2], 0.0));
    let (_, vectors) = hermitian_eig(&n_sigma)?;
    let basis: Vec<Vec<Complex64>> = (0..2)
        .map(|k| (0..2).map(|i| vectors[(i, k)]).collect())
        .collect();
    Ok(CorrelationResult { q, method: Method::QubitQudit, optimal_basis: basis, diagnostics: None })
}

/// Pure-state route: Q = 1 − Tr ϱ_r² at the Schmidt basis of A.
pub fn q_pure(psi: &[Complex64], m: usize, n: usize) -> Result<CorrelationResult> {
    let rho = DensityMatrix::from_pure(m, n, psi)?;
    q_pure_from_density(&rho)
}

fn q_pure_from_density(rho: &DensityMatrix) -> Result<CorrelationResult> {
    let reduced = rho.partial_trace_b();
    let q = clip_q(1.0 - reduced.trace_product(&reduced).re)?;
    // Schmidt basis of A: eigenbasis of the reduced state, descending weight.
    let (_, vectors) = hermitian_eig(&reduced)?;
    let m = rho.dim_a();
    let basis: Vec<Vec<Complex64>> = (0..m)
        .rev()
        .map(|k| (0..m).map(|i| vectors[(i, k)]).collect())
        .collect();
    Ok(CorrelationResult { q, method: Method::Pure, optimal_basis: basis, diagnostics: None })
}

/// Compute Q by the cheapest exact route: pure states through Eq-of-purity,
/// m = 2 through the closed form, everything else through JAD.
pub fn quantum_correlation(rho: &DensityMatrix, opts: &JadOptions) -> Result<CorrelationResult> {
    if rho.purity() > PURITY_THRESHOLD {
        q_pure_from_density(rho)
    } else if rho.dim_a() == 2 {
        q_qubit_qudit(rho)
    } else {
        q_general(rho, opts)
    }
}

/// Quantum Fisher information per phase, F_Qk = −Tr[√ρ, K_k]² for the
/// projectors K_k = |k⟩⟨k|⊗1_n of an orthonormal basis of A.
///
/// At the optimal basis, Σ_k F_Qk = 2·Q(ρ_AB).
pub fn fisher_per_phase(rho: &DensityMatrix, basis: &[Vec<Complex64>]) -> Result<Vec<f64>> {
    let m = rho.dim_a();
    if basis.len() != m || basis.iter().any(|b| b.len() != m) {
        return Err(Error::DimensionMismatch(format!(
            "basis must hold {m} vectors of length {m}"
        )));
    }
    let residual = orthonormality_residual(basis);
    if residual > 1e-10 {
        return Err(Error::NotOrthonormal { residual });
    }
    let s = psd_sqrt(rho)?;
    let ident_b = ComplexMatrix::identity(rho.dim_b());
    basis
        .iter()
        .map(|b| {
            let k = ComplexMatrix::projector(b).kron(&ident_b)?;
            Ok(2.0 * skew_with_sqrt(&s, &k))
        })
        .collect()
}

/// Evaluate −½ Σ_k Tr[√ρ, K_k]² at a given basis: an upper bound on Q and the
/// certificate that a returned basis reproduces the reported value.
pub fn q_at_basis(rho: &DensityMatrix, basis: &[Vec<Complex64>]) -> Result<f64> {
    Ok(fisher_per_phase(rho, basis)?.iter().sum::<f64>() / 2.0)
}

/// True iff Q(ρ) < tol, i.e. ρ is classical-quantum within tolerance.
pub fn is_classical_quantum(rho: &DensityMatrix, tol: f64, opts: &JadOptions) -> Result<bool> {
    Ok(quantum_correlation(rho, opts)?.q < tol)
}

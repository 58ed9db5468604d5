//! Bipartite density matrices and the block decomposition of their square
//! roots.
//!
//! Composite index convention: `k = a·n + b` for `|a⟩_A |b⟩_B` (A-major),
//! matching the Kronecker product `kron(A-operator, B-operator)`.

use super::{hermitian_eig, norm_sqr, Complex64, ComplexMatrix};
use crate::error::{Error, Result};

const HERMITIAN_REL_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;

/// Validated (m⊗n) bipartite state: Hermitian, PSD, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: usize,
    n: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap an (mn)×(mn) matrix.
    ///
    /// Near-Hermitian inputs (residual ≤ 1e-10·max(1,‖·‖_F)) are symmetrized,
    /// trace within 1e-10 of one is normalized exactly, and any eigenvalue
    /// below -1e-12 rejects the input.
    pub fn new(m: usize, n: usize, mat: ComplexMatrix) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::BadParameter("subsystem dimensions must be positive".into()));
        }
        let d = m * n;
        if mat.rows() != d || mat.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "state of dimensions {m}x{n} needs a {d}x{d} matrix, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if !mat.is_finite() {
            return Err(Error::NonFinite);
        }
        let tol = HERMITIAN_REL_TOL * mat.frobenius_norm().max(1.0);
        let residual = mat.hermitian_residual();
        if residual > tol {
            return Err(Error::NotHermitian { residual, tol });
        }
        let mut mat = mat.symmetrize();
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        // Renormalize real deviations but leave rounding-level ones alone, so
        // validating an already-validated matrix is a bit-exact no-op.
        if (trace - 1.0).abs() > 1e-13 {
            mat = mat.scale(Complex64::new(1.0 / trace, 0.0));
        }
        let (values, _) = hermitian_eig(&mat)?;
        if let Some(&lo) = values.first() {
            if lo < -1e-12 {
                return Err(Error::NotPositive { eigenvalue: lo });
            }
        }
        Ok(Self { m, n, mat })
    }

    /// Projector onto a normalized pure state vector of length m·n.
    pub fn from_pure(m: usize, n: usize, psi: &[Complex64]) -> Result<Self> {
        if psi.len() != m * n {
            return Err(Error::DimensionMismatch(format!(
                "pure state needs {} amplitudes, got {}",
                m * n,
                psi.len()
            )));
        }
        let norm = norm_sqr(psi).sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm });
        }
        let scaled: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(m, n, ComplexMatrix::projector(&scaled))
    }

    /// The maximally mixed state 1/(mn).
    pub fn maximally_mixed(m: usize, n: usize) -> Result<Self> {
        let d = m * n;
        let mat = ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0));
        Self::new(m, n, mat)
    }

    pub fn dim_a(&self) -> usize {
        self.m
    }

    pub fn dim_b(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m * self.n
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Tr ρ², in [1/(mn), 1].
    pub fn purity(&self) -> f64 {
        self.mat.trace_product(&self.mat).re
    }

    /// Reduced state on A: (ρ_A)[a,a'] = Σ_b ρ[a·n+b, a'·n+b].
    pub fn partial_trace_b(&self) -> ComplexMatrix {
        let (m, n) = (self.m, self.n);
        ComplexMatrix::from_fn(m, m, |a, a2| {
            (0..n).map(|b| self.mat[(a * n + b, a2 * n + b)]).sum()
        })
    }

    /// Reduced state on B: (ρ_B)[b,b'] = Σ_a ρ[a·n+b, a·n+b'].
    pub fn partial_trace_a(&self) -> ComplexMatrix {
        let (m, n) = (self.m, self.n);
        ComplexMatrix::from_fn(n, n, |b, b2| {
            (0..m).map(|a| self.mat[(a * n + b, a * n + b2)]).sum()
        })
    }
}

/// The n² blocks A_ij = (1_m⊗⟨i|) S (1_m⊗|j⟩) of an (mn)×(mn) matrix S,
/// indexed by the computational basis of B. For Hermitian S the blocks pair as
/// A_ij† = A_ji.
#[derive(Debug, Clone)]
pub struct BlockSet {
    m: usize,
    n: usize,
    blocks: Vec<ComplexMatrix>,
}

impl BlockSet {
    pub fn dim_a(&self) -> usize {
        self.m
    }

    pub fn dim_b(&self) -> usize {
        self.n
    }

    /// Block A_ij.
    pub fn block(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.blocks[i * self.n + j]
    }

    /// All blocks in row-major (i, j) order.
    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }
}

/// Extract the BlockSet of S, with A_ij[a,b] = S[a·n+i, b·n+j].
pub fn extract_blocks(s: &ComplexMatrix, m: usize, n: usize) -> Result<BlockSet> {
    let d = m * n;
    if s.rows() != d || s.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "block extraction expects a {d}x{d} matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let mut blocks = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            blocks.push(ComplexMatrix::from_fn(m, m, |a, b| s[(a * n + i, b * n + j)]));
        }
    }
    Ok(BlockSet { m, n, blocks })
}

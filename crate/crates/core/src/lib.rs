//! Skew-information quantum correlation of bipartite density matrices.
//!
//! The correlation measure Q(ρ_AB) is the minimum over rank-1 projector bases
//! of subsystem A of the summed skew informations `-½ Σ_k Tr[√ρ, K_k]²`. The
//! minimization reduces to joint approximate diagonalization of the blocks
//! `A_ij = (1_m⊗⟨i|) √ρ (1_m⊗|j⟩)`, solved here by Jacobi plane-rotation
//! sweeps, with closed-form fast paths for pure and qubit-qudit states and
//! analytic oracle families (Werner, isotropic, a 3⊗3 PPT family) for
//! verification.
//!
//! ```
//! use skewcorr_core::{quantum_correlation, states, JadOptions};
//!
//! let rho = states::werner(3, 0.7).unwrap();
//! let result = quantum_correlation(&rho, &JadOptions::default()).unwrap();
//! assert!((result.q - skewcorr_core::oracle::analytic_werner(3, 0.7).unwrap()).abs() < 1e-8);
//! ```

pub mod channels;
mod error;
pub mod jad;
pub mod linalg;
pub mod measure;
pub mod oracle;
pub mod states;

pub use error::{Error, Result};
pub use jad::{jad, JadOptions, JadResult, MatrixSet, PlaneRotation};
pub use linalg::{
    extract_blocks, hermitian_eig, psd_sqrt, BlockSet, Complex64, ComplexMatrix, DensityMatrix,
};
pub use measure::{
    correlation_matrix_t, fisher_per_phase, is_classical_quantum, q_at_basis, q_general, q_pure,
    q_qubit_qudit, quantum_correlation, skew_information, CorrelationResult, CorrelationT, Method,
};
pub use oracle::OracleBudget;
pub use states::{Family, FamilySpec};

pub use channels::KrausChannel;

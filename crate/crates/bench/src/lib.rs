//! Shared fixtures for the criterion benchmarks.

use skewcorr_core::{extract_blocks, psd_sqrt, states, DensityMatrix, MatrixSet};

/// The reduced JAD input for a state: blocks of √ρ with adjoint weights.
pub fn block_set(rho: &DensityMatrix) -> MatrixSet {
    let s = psd_sqrt(rho).expect("benchmark states are valid");
    let blocks = extract_blocks(&s, rho.dim_a(), rho.dim_b()).expect("dimensions match");
    MatrixSet::from_blocks(&blocks)
}

/// A full-rank seeded random state.
pub fn random_state(m: usize, n: usize) -> DensityMatrix {
    states::random_mixed(m, n, m * n, 0xBE7C4).expect("valid dimensions")
}

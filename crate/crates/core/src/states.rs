//! Deterministic generators for the analyzed state families, plus seeded
//! random states for property testing.

use crate::error::{Error, Result};
use crate::linalg::{norm_sqr, Complex64, ComplexMatrix, DensityMatrix};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Tags for the built-in state families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Werner,
    Isotropic,
    Ppt,
    MaxEntangled,
    PureSchmidt,
    ClassicalQuantum,
    RandomMixed,
}

/// JSON-serializable description of a state to build.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub n: usize,
    /// x for Werner/isotropic, α for the PPT family, rank for random states.
    #[serde(default)]
    pub param: f64,
    /// Schmidt coefficients or classical-quantum weights.
    #[serde(default)]
    pub extras: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
}

/// Build the state a [`FamilySpec`] describes.
pub fn build_state(spec: &FamilySpec) -> Result<DensityMatrix> {
    match spec.family {
        Family::Werner => werner(spec.m, spec.param),
        Family::Isotropic => isotropic(spec.m, spec.param),
        Family::Ppt => ppt_family(spec.param),
        Family::MaxEntangled => {
            let psi = max_entangled(spec.m)?;
            DensityMatrix::from_pure(spec.m, spec.m, &psi)
        }
        Family::PureSchmidt => {
            let mu = &spec.extras;
            let psi = pure_from_schmidt(mu)?;
            DensityMatrix::from_pure(mu.len(), mu.len(), &psi)
        }
        Family::ClassicalQuantum => {
            let k = if spec.extras.is_empty() { spec.m } else { spec.extras[0] as usize };
            random_classical_quantum(spec.m, spec.n, k, spec.seed)
        }
        Family::RandomMixed => {
            let rank = if spec.param > 0.0 { spec.param as usize } else { spec.m * spec.n };
            random_mixed(spec.m, spec.n, rank, spec.seed)
        }
    }
}

/// The swap operator V = Σ |kl⟩⟨lk| on m⊗m.
pub fn swap_operator(m: usize) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(m * m, m * m);
    for k in 0..m {
        for l in 0..m {
            v[(k * m + l, l * m + k)] = Complex64::new(1.0, 0.0);
        }
    }
    v
}

/// Werner state ρ_W = (m−x)/(m³−m)·1 + (mx−1)/(m³−m)·V with Tr(ρ_W V) = x.
pub fn werner(m: usize, x: f64) -> Result<DensityMatrix> {
    if m < 2 {
        return Err(Error::BadParameter(format!("werner needs m >= 2, got {m}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::BadParameter(format!("werner needs x in [-1, 1], got {x}")));
    }
    let denom = (m * m * m - m) as f64;
    let a = (m as f64 - x) / denom;
    let b = (m as f64 * x - 1.0) / denom;
    let ident = ComplexMatrix::identity(m * m);
    let v = swap_operator(m);
    let mat = &ident.scale(Complex64::new(a, 0.0)) + &v.scale(Complex64::new(b, 0.0));
    DensityMatrix::new(m, m, mat)
}

/// Isotropic state ρ_I = (1−x)/(m²−1)·1 + (m²x−1)/(m²−1)·|Φ⟩⟨Φ| with
/// ⟨Φ|ρ_I|Φ⟩ = x.
pub fn isotropic(m: usize, x: f64) -> Result<DensityMatrix> {
    if m < 2 {
        return Err(Error::BadParameter(format!("isotropic needs m >= 2, got {m}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::BadParameter(format!("isotropic needs x in [0, 1], got {x}")));
    }
    let denom = (m * m - 1) as f64;
    let a = (1.0 - x) / denom;
    let b = (m as f64 * m as f64 * x - 1.0) / denom;
    let phi = max_entangled(m)?;
    let proj = ComplexMatrix::projector(&phi);
    let ident = ComplexMatrix::identity(m * m);
    let mat = &ident.scale(Complex64::new(a, 0.0)) + &proj.scale(Complex64::new(b, 0.0));
    DensityMatrix::new(m, m, mat)
}

/// The 3⊗3 family ρ = (2/7)|Φ₃⟩⟨Φ₃| + (α/7)ρ_+ + ((5−α)/7)ρ_−, with ρ_± built
/// from |k, k±1 mod 3⟩. Separable for α ≤ 3, PPT-entangled for α ∈ (3,4],
/// free-entangled for α ∈ (4,5].
pub fn ppt_family(alpha: f64) -> Result<DensityMatrix> {
    if !(2.0..=5.0).contains(&alpha) {
        return Err(Error::BadParameter(format!("ppt family needs α in [2, 5], got {alpha}")));
    }
    let phi = max_entangled(3)?;
    let mut mat = ComplexMatrix::projector(&phi).scale(Complex64::new(2.0 / 7.0, 0.0));
    let wp = alpha / 21.0;
    let wm = (5.0 - alpha) / 21.0;
    for k in 0..3usize {
        let plus = k * 3 + (k + 1) % 3; // |k, k⊕1⟩
        let minus = ((k + 1) % 3) * 3 + k; // |k⊕1, k⟩
        mat[(plus, plus)] += Complex64::new(wp, 0.0);
        mat[(minus, minus)] += Complex64::new(wm, 0.0);
    }
    DensityMatrix::new(3, 3, mat)
}

/// |Φ⟩_m = (1/√m) Σ_k |kk⟩.
pub fn max_entangled(m: usize) -> Result<Vec<Complex64>> {
    if m < 1 {
        return Err(Error::BadParameter("max_entangled needs m >= 1".into()));
    }
    let inv = 1.0 / (m as f64).sqrt();
    let mut psi = vec![Complex64::new(0.0, 0.0); m * m];
    for k in 0..m {
        psi[k * m + k] = Complex64::new(inv, 0.0);
    }
    Ok(psi)
}

/// Pure state Σ μ_i |ii⟩ in r⊗r from Schmidt coefficients μ (nonnegative,
/// Σμ² = 1 within 1e-10).
pub fn pure_from_schmidt(mu: &[f64]) -> Result<Vec<Complex64>> {
    if mu.is_empty() {
        return Err(Error::BadParameter("schmidt coefficient list is empty".into()));
    }
    if mu.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(Error::BadParameter("schmidt coefficients must be nonnegative".into()));
    }
    let total: f64 = mu.iter().map(|x| x * x).sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: total.sqrt() });
    }
    let r = mu.len();
    let mut psi = vec![Complex64::new(0.0, 0.0); r * r];
    for (i, &c) in mu.iter().enumerate() {
        psi[i * r + i] = Complex64::new(c, 0.0);
    }
    Ok(psi)
}

/// Classical-quantum state Σ_j λ_j |b_j⟩⟨b_j| ⊗ ϱ_j from weights, an
/// orthonormal set of A-vectors and B-states.
pub fn classical_quantum(
    lambda: &[f64],
    basis: &[Vec<Complex64>],
    states_b: &[ComplexMatrix],
) -> Result<DensityMatrix> {
    if lambda.is_empty() || lambda.len() != basis.len() || lambda.len() != states_b.len() {
        return Err(Error::DimensionMismatch(
            "weights, basis vectors and B-states must have matching lengths".into(),
        ));
    }
    if lambda.iter().any(|&l| l < 0.0 || !l.is_finite()) {
        return Err(Error::BadParameter("weights must be nonnegative".into()));
    }
    let total: f64 = lambda.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::BadParameter(format!("weights must sum to 1, got {total}")));
    }
    let m = basis[0].len();
    let n = states_b[0].rows();
    let residual = crate::linalg::orthonormality_residual(basis);
    if residual > 1e-10 {
        return Err(Error::NotOrthonormal { residual });
    }
    let mut mat = ComplexMatrix::zeros(m * n, m * n);
    for ((l, b), rho_b) in lambda.iter().zip(basis).zip(states_b) {
        if b.len() != m {
            return Err(Error::DimensionMismatch("basis vectors must share one dimension".into()));
        }
        if rho_b.rows() != n || rho_b.cols() != n {
            return Err(Error::DimensionMismatch("B-states must share one dimension".into()));
        }
        let proj = ComplexMatrix::projector(b);
        let term = proj.kron(rho_b)?.scale(Complex64::new(*l, 0.0));
        mat = &mat + &term;
    }
    DensityMatrix::new(m, n, mat)
}

fn ginibre(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        entries.push(Complex64::new(re, im));
    }
    ComplexMatrix::new(rows, cols, entries).expect("gaussian samples are finite")
}

/// Seeded random density matrix of the given rank, G·G†/Tr(G·G†) with G an
/// (mn)×rank Ginibre matrix.
pub fn random_mixed(m: usize, n: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let d = m * n;
    if rank == 0 || rank > d {
        return Err(Error::BadParameter(format!("rank must be in 1..={d}, got {rank}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ginibre(d, rank, &mut rng);
    let gram = g.matmul(&g.adjoint());
    let trace = gram.trace().re;
    DensityMatrix::new(m, n, gram.scale(Complex64::new(1.0 / trace, 0.0)))
}

/// Seeded Haar-random unitary: modified Gram-Schmidt on a Ginibre matrix.
///
/// MGS normalizes each residual by its positive real norm, which is exactly
/// the phase-fixed QR that makes the output Haar-distributed. A second
/// orthogonalization pass keeps the columns orthonormal to ~1e-15.
pub fn random_unitary(d: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unitary_with(d, &mut rng)
}

pub(crate) fn random_unitary_with(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ginibre(d, d, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..d).map(|j| (0..d).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..d {
        let (done, rest) = cols.split_at_mut(j);
        let target = &mut rest[0];
        for _pass in 0..2 {
            for prev in done.iter() {
                let overlap = crate::linalg::inner(prev, target);
                for (t, p) in target.iter_mut().zip(prev) {
                    *t -= overlap * p;
                }
            }
        }
        let norm = norm_sqr(target).sqrt();
        for z in target.iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(d, d, |i, j| cols[j][i])
}

/// Seeded random pure state vector on m⊗n.
pub fn random_pure(m: usize, n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = m * n;
    let g = ginibre(d, 1, &mut rng);
    let mut psi: Vec<Complex64> = (0..d).map(|i| g[(i, 0)]).collect();
    let norm = norm_sqr(&psi).sqrt();
    for z in &mut psi {
        *z /= norm;
    }
    psi
}

/// Seeded random classical-quantum state with k components and a Haar-rotated
/// A-basis.
pub fn random_classical_quantum(m: usize, n: usize, k: usize, seed: u64) -> Result<DensityMatrix> {
    if k == 0 || k > m {
        return Err(Error::BadParameter(format!("component count must be in 1..={m}, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary_with(m, &mut rng);
    let basis: Vec<Vec<Complex64>> = (0..k).map(|j| (0..m).map(|i| u[(i, j)]).collect()).collect();
    let mut lambda: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = lambda.iter().sum();
    for l in &mut lambda {
        *l /= total;
    }
    let states_b: Vec<ComplexMatrix> = (0..k)
        .map(|_| {
            let g = ginibre(n, n, &mut rng);
            let gram = g.matmul(&g.adjoint());
            let trace = gram.trace().re;
            gram.scale(Complex64::new(1.0 / trace, 0.0))
        })
        .collect();
    classical_quantum(&lambda, &basis, &states_b)
}

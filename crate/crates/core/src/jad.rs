//! Joint approximate diagonalization of a set of complex matrices by cyclic
//! Jacobi sweeps of closed-form plane rotations.
//!
//! Each sweep visits the m(m-1)/2 planes in row-cyclic order. The optimal
//! rotation in a plane comes from the dominant eigenvector of the 3×3 real
//! symmetric matrix `G = Σ_A w_A·Re(h(A)*·h(A)ᵀ)` with
//! `h(A) = [A_pp−A_qq, A_pq+A_qp, i(A_qp−A_pq)]`, the standard Jacobi-angles
//! construction. The sweep loop stops once the largest |s| seen in a full
//! sweep falls below the rotation tolerance.

use crate::error::{Error, Result};
use crate::linalg::{BlockSet, Complex64, ComplexMatrix};
use crate::states::random_unitary;
use nalgebra::Matrix3;

/// Restart objectives closer than this (relative to the set mass, which
/// bounds the objective) tie onto the earlier restart.
const RESTART_TIE_TOL: f64 = 1e-14;

/// A plane whose best rotation gains less than this fraction of |s|²·tr(G) is
/// left alone; it separates genuinely flat planes (where the eigenvector of a
/// near-degenerate G is arbitrary) from small but real rotations.
const FLAT_GAIN_RATIO: f64 = 1e-12;

/// Gains below this fraction of tr(G) are rounding noise regardless of |s|.
const GAIN_FLOOR_RATIO: f64 = 1e-20;

/// Weighted set of same-dimension square matrices to diagonalize jointly.
///
/// The weighted set must be adjoint-consistent: every member is Hermitian or
/// its objective contribution equals that of its adjoint, as guaranteed by
/// [`MatrixSet::from_blocks`].
#[derive(Debug, Clone)]
pub struct MatrixSet {
    dim: usize,
    matrices: Vec<ComplexMatrix>,
    weights: Vec<f64>,
}

impl MatrixSet {
    /// A set with explicit positive weights.
    pub fn new(matrices: Vec<ComplexMatrix>, weights: Vec<f64>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::EmptySet);
        }
        if matrices.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices but {} weights",
                matrices.len(),
                weights.len()
            )));
        }
        let dim = matrices[0].rows();
        for m in &matrices {
            if !m.is_square() {
                return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
            }
            if m.rows() != dim {
                return Err(Error::DimensionMismatch(
                    "matrices in a set must share one dimension".into(),
                ));
            }
            if !m.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        if weights.iter().any(|&w| w.is_nan() || w <= 0.0 || !w.is_finite()) {
            return Err(Error::BadParameter("weights must be positive and finite".into()));
        }
        Ok(Self { dim, matrices, weights })
    }

    /// Unit weights.
    pub fn uniform(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let weights = vec![1.0; matrices.len()];
        Self::new(matrices, weights)
    }

    /// The reduced set for a block decomposition of a Hermitian matrix.
    ///
    /// Since A_ji = A_ij† and the squared-diagonal criterion is invariant
    /// under the adjoint, only blocks with i ≤ j are kept: weight 1 on the
    /// diagonal, weight 2 off it. This halves the work while preserving the
    /// objective of the full n² set exactly.
    pub fn from_blocks(blocks: &BlockSet) -> Self {
        let n = blocks.dim_b();
        let mut matrices = Vec::with_capacity(n * (n + 1) / 2);
        let mut weights = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                matrices.push(blocks.block(i, j).clone());
                weights.push(if i == j { 1.0 } else { 2.0 });
            }
        }
        Self { dim: blocks.dim_a(), matrices, weights }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ_A w_A·‖A‖_F², the unitarily invariant total mass and the upper bound
    /// of the objective.
    pub fn total_mass(&self) -> f64 {
        self.matrices
            .iter()
            .zip(&self.weights)
            .map(|(m, w)| {
                let f = m.frobenius_norm();
                w * f * f
            })
            .sum()
    }
}

/// Options for a [`jad`] run.
#[derive(Debug, Clone, PartialEq)]
pub struct JadOptions {
    /// Sweep convergence threshold on the largest |s| of a sweep.
    pub rotation_tolerance: f64,
    /// Hard cap on the number of sweeps per run.
    pub max_sweeps: usize,
    /// Number of Haar-random restarts on top of the identity start.
    pub restarts: usize,
    /// Seed for the restart unitaries.
    pub seed: u64,
}

impl Default for JadOptions {
    fn default() -> Self {
        Self { rotation_tolerance: 1e-12, max_sweeps: 100, restarts: 5, seed: 0 }
    }
}

impl JadOptions {
    fn validate(&self) -> Result<()> {
        if self.rotation_tolerance.is_nan() || self.rotation_tolerance <= 0.0 {
            return Err(Error::BadParameter("rotation_tolerance must be positive".into()));
        }
        if self.max_sweeps == 0 {
            return Err(Error::BadParameter("max_sweeps must be at least 1".into()));
        }
        Ok(())
    }
}

/// Result of a [`jad`] run: the winning unitary and its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct JadResult {
    /// The joint diagonalizer U_o; rows conjugated give the optimizing basis.
    pub unitary: ComplexMatrix,
    /// Joint diagonal values λ_k = (U_o A U_o†)_kk per retained matrix.
    pub joint_diagonals: Vec<Vec<Complex64>>,
    /// Σ weights·Σ_k |λ_k|², recomputed from `unitary`.
    pub objective: f64,
    /// Sweeps used by the winning run.
    pub sweeps_used: usize,
    /// Planes visited by the winning run (m(m-1)/2 per sweep).
    pub rotations_used: usize,
    /// Whether the winning run stopped by tolerance rather than sweep cap.
    pub converged: bool,
    /// Index of the winning run: 0 is the identity start, 1..=restarts the
    /// seeded random starts.
    pub restart_index: usize,
}

/// A complex Givens rotation in one (p, q) plane, c² + |s|² = 1 with c real.
///
/// Acts as A ↦ R A R† where R is the identity except R_pp = c, R_pq = s̄,
/// R_qp = −s, R_qq = c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneRotation {
    pub c: f64,
    pub s: Complex64,
}

impl PlaneRotation {
    pub const IDENTITY: Self = Self { c: 1.0, s: Complex64::new(0.0, 0.0) };

    pub fn is_identity(&self) -> bool {
        self.c == 1.0 && self.s == Complex64::new(0.0, 0.0)
    }

    /// The rotation as a dense dim×dim unitary.
    pub fn embed(&self, dim: usize, p: usize, q: usize) -> ComplexMatrix {
        let mut r = ComplexMatrix::identity(dim);
        r[(p, p)] = Complex64::new(self.c, 0.0);
        r[(p, q)] = self.s.conj();
        r[(q, p)] = -self.s;
        r[(q, q)] = Complex64::new(self.c, 0.0);
        r
    }

    /// A ← R A R†.
    pub fn conjugate_in_place(&self, a: &mut ComplexMatrix, p: usize, q: usize) {
        let (c, s) = (self.c, self.s);
        let sc = s.conj();
        let dim = a.rows();
        for j in 0..dim {
            let apj = a[(p, j)];
            let aqj = a[(q, j)];
            a[(p, j)] = apj * c + aqj * sc;
            a[(q, j)] = aqj * c - apj * s;
        }
        for i in 0..dim {
            let aip = a[(i, p)];
            let aiq = a[(i, q)];
            a[(i, p)] = aip * c + aiq * s;
            a[(i, q)] = aiq * c - aip * sc;
        }
    }

    /// U ← R U.
    pub fn apply_left(&self, u: &mut ComplexMatrix, p: usize, q: usize) {
        let (c, s) = (self.c, self.s);
        let sc = s.conj();
        let dim = u.cols();
        for j in 0..dim {
            let upj = u[(p, j)];
            let uqj = u[(q, j)];
            u[(p, j)] = upj * c + uqj * sc;
            u[(q, j)] = uqj * c - upj * s;
        }
    }
}

fn raw_objective(u: &ComplexMatrix, matrices: &[ComplexMatrix], weights: &[f64]) -> f64 {
    let dim = u.rows();
    let mut total = 0.0;
    for (a, w) in matrices.iter().zip(weights) {
        let ua = u.matmul(a);
        let mut acc = 0.0;
        for k in 0..dim {
            let mut diag = Complex64::new(0.0, 0.0);
            for b in 0..dim {
                diag += ua[(k, b)] * u[(k, b)].conj();
            }
            acc += diag.norm_sqr();
        }
        total += w * acc;
    }
    total
}

fn joint_diagonals(u: &ComplexMatrix, matrices: &[ComplexMatrix]) -> Vec<Vec<Complex64>> {
    let dim = u.rows();
    matrices
        .iter()
        .map(|a| {
            let ua = u.matmul(a);
            (0..dim)
                .map(|k| (0..dim).map(|b| ua[(k, b)] * u[(k, b)].conj()).sum())
                .collect()
        })
        .collect()
}

/// The squared-diagonal objective Σ_A w_A·Σ_k |(U A U†)_kk|².
pub fn objective(u: &ComplexMatrix, set: &MatrixSet) -> Result<f64> {
    if !u.is_square() || u.rows() != set.dim {
        return Err(Error::DimensionMismatch(format!(
            "unitary is {}x{}, set dimension is {}",
            u.rows(),
            u.cols(),
            set.dim
        )));
    }
    let residual = u.unitarity_residual();
    if residual > 1e-8 {
        return Err(Error::NotUnitary { residual, tol: 1e-8 });
    }
    Ok(raw_objective(u, &set.matrices, &set.weights))
}

fn best_rotation_slices(matrices: &[ComplexMatrix], weights: &[f64], p: usize, q: usize) -> PlaneRotation {
    let mut g = [[0.0f64; 3]; 3];
    for (a, w) in matrices.iter().zip(weights) {
        let h = [
            a[(p, p)] - a[(q, q)],
            a[(p, q)] + a[(q, p)],
            Complex64::new(0.0, 1.0) * (a[(q, p)] - a[(p, q)]),
        ];
        for r in 0..3 {
            for c in r..3 {
                g[r][c] += w * (h[r].conj() * h[c]).re;
            }
        }
    }
    g[1][0] = g[0][1];
    g[2][0] = g[0][2];
    g[2][1] = g[1][2];

    let gm = Matrix3::new(
        g[0][0], g[0][1], g[0][2], g[1][0], g[1][1], g[1][2], g[2][0], g[2][1], g[2][2],
    );
    let eig = gm.symmetric_eigen();
    let mut idx = 0;
    for k in 1..3 {
        if eig.eigenvalues[k] > eig.eigenvalues[idx] {
            idx = k;
        }
    }
    let lambda = eig.eigenvalues[idx];
    if lambda.is_nan() || lambda <= 0.0 {
        return PlaneRotation::IDENTITY;
    }
    let mut v = [
        eig.eigenvectors[(0, idx)],
        eig.eigenvectors[(1, idx)],
        eig.eigenvectors[(2, idx)],
    ];
    if v[0] < 0.0 {
        for x in &mut v {
            *x = -*x;
        }
    }
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if r.is_nan() || r <= 0.0 {
        return PlaneRotation::IDENTITY;
    }
    let x = v[0] / r;
    let c = ((1.0 + x) / 2.0).sqrt();
    let s = Complex64::new(v[1] / r, -v[2] / r) / (2.0 * c);

    // On a flat plane the dominant eigenvector of a (near-)degenerate G is
    // arbitrary and |s| can be large while the attainable gain is zero; leave
    // those planes alone so the |s| convergence test still works. Near the
    // identity the gain λ - G_00 cancels catastrophically in f64, so it is
    // taken from the eigenvector identity (λ - G_00)·v0 = G_01·v1 + G_02·v2,
    // which stays accurate down to the rounding floor.
    let gain = if x > 0.5 {
        (g[0][1] * v[1] / r + g[0][2] * v[2] / r) / x
    } else {
        lambda - g[0][0]
    };
    let trace = g[0][0] + g[1][1] + g[2][2];
    if gain <= FLAT_GAIN_RATIO * s.norm_sqr() * trace || gain <= GAIN_FLOOR_RATIO * trace {
        return PlaneRotation::IDENTITY;
    }
    PlaneRotation { c, s }
}

/// Closed-form rotation maximizing the objective restricted to the (p, q)
/// plane. Applying it never decreases the objective.
pub fn best_rotation(set: &MatrixSet, p: usize, q: usize) -> Result<PlaneRotation> {
    if p >= q {
        return Err(Error::IndexOutOfRange(format!("need p < q, got p={p}, q={q}")));
    }
    if q >= set.dim {
        return Err(Error::IndexOutOfRange(format!("q={q} out of range for dimension {}", set.dim)));
    }
    Ok(best_rotation_slices(&set.matrices, &set.weights, p, q))
}

struct Run {
    unitary: ComplexMatrix,
    objective: f64,
    sweeps: usize,
    rotations: usize,
    converged: bool,
    index: usize,
}

fn run_from(set: &MatrixSet, u0: ComplexMatrix, opts: &JadOptions, index: usize) -> Run {
    let dim = set.dim;
    let mut u = u0;
    let mut work: Vec<ComplexMatrix> = set
        .matrices
        .iter()
        .map(|a| u.matmul(a).matmul(&u.adjoint()))
        .collect();

    let mut sweeps = 0;
    let mut rotations = 0;
    let mut converged = false;
    while sweeps < opts.max_sweeps {
        sweeps += 1;
        let mut max_s: f64 = 0.0;
        for p in 0..dim.saturating_sub(1) {
            for q in (p + 1)..dim {
                rotations += 1;
                let rot = best_rotation_slices(&work, &set.weights, p, q);
                let s_abs = rot.s.norm();
                max_s = max_s.max(s_abs);
                if s_abs >= opts.rotation_tolerance {
                    for a in &mut work {
                        rot.conjugate_in_place(a, p, q);
                    }
                    rot.apply_left(&mut u, p, q);
                }
            }
        }
        if max_s < opts.rotation_tolerance {
            converged = true;
            break;
        }
    }
    let objective = raw_objective(&u, &set.matrices, &set.weights);
    Run { unitary: u, objective, sweeps, rotations, converged, index }
}

/// Joint approximate diagonalization of `set`.
///
/// Runs once from the identity plus `opts.restarts` seeded Haar-random
/// starts, and returns the run with the largest objective. Restarts within
/// 1e-14 of each other tie onto the lowest restart index, so results are
/// bit-deterministic for a fixed seed.
pub fn jad(set: &MatrixSet, opts: &JadOptions) -> Result<JadResult> {
    opts.validate()?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = set.dim;
    let tie = RESTART_TIE_TOL * set.total_mass().max(1.0);
    let mut best: Option<Run> = None;
    for index in 0..=opts.restarts {
        let u0 = if index == 0 {
            ComplexMatrix::identity(dim)
        } else {
            random_unitary(dim, opts.seed.wrapping_add(index as u64))
        };
        let run = run_from(set, u0, opts, index);
        let replace = match &best {
            None => true,
            Some(b) => run.objective > b.objective + tie,
        };
        if replace {
            best = Some(run);
        }
    }
    let best = best.expect("at least the identity run exists");
    let joint_diagonals = joint_diagonals(&best.unitary, &set.matrices);
    Ok(JadResult {
        objective: best.objective,
        unitary: best.unitary,
        joint_diagonals,
        sweeps_used: best.sweeps,
        rotations_used: best.rotations,
        converged: best.converged,
        restart_index: best.index,
    })
}

//! Independent ground truth for the JAD pipeline: closed-form correlation
//! values for the analyzed families, and a brute-force basis search that
//! minimizes the defining commutator objective directly, without the
//! joint-diagonalization reduction.

use crate::error::{Error, Result};
use crate::jad::JadOptions;
use crate::linalg::{psd_sqrt, Complex64, ComplexMatrix, DensityMatrix};
use crate::measure::q_general;
use crate::states::{ppt_family, random_unitary};

/// Search budget for [`brute_force_q`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleBudget {
    /// Bloch-sphere grid size for m = 2 (total points ≈ grid_points).
    pub grid_points: usize,
    /// Random starts for m ≥ 3.
    pub restarts: usize,
    /// Hill-climbing iterations per start.
    pub refine_iters: usize,
    pub seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { grid_points: 10_000, restarts: 64, refine_iters: 200, seed: 0 }
    }
}

impl OracleBudget {
    fn validate(&self) -> Result<()> {
        if self.grid_points == 0 || self.restarts == 0 || self.refine_iters == 0 {
            return Err(Error::BadParameter("oracle budget fields must be positive".into()));
        }
        Ok(())
    }
}

/// Closed form for the Werner family:
/// Q = (m − x − √(m²−1)·√(1−x²)) / (2(1+m)).
pub fn analytic_werner(m: usize, x: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::BadParameter(format!("werner needs m >= 2, got {m}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::BadParameter(format!("werner needs x in [-1, 1], got {x}")));
    }
    let mf = m as f64;
    Ok((mf - x - (mf * mf - 1.0).sqrt() * (1.0 - x * x).max(0.0).sqrt()) / (2.0 * (1.0 + mf)))
}

/// Closed form for the isotropic family:
/// Q = (1 − 2√(m²−1)·√(x(1−x)) + (m²−2)x) / (m(1+m)).
pub fn analytic_isotropic(m: usize, x: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::BadParameter(format!("isotropic needs m >= 2, got {m}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::BadParameter(format!("isotropic needs x in [0, 1], got {x}")));
    }
    let mf = m as f64;
    Ok((1.0 - 2.0 * (mf * mf - 1.0).sqrt() * (x * (1.0 - x)).max(0.0).sqrt()
        + (mf * mf - 2.0) * x)
        / (mf * (1.0 + mf)))
}

/// The sudden-change point N_T = (15 + √(136√94 − 1307))/6 of the PPT family,
/// from the closed radical.
pub fn transition_alpha() -> f64 {
    (15.0 + (136.0 * 94f64.sqrt() - 1307.0).sqrt()) / 6.0
}

fn ppt_first_branch(alpha: f64) -> f64 {
    (21.0
        - (6.0 * (5.0 - alpha)).sqrt()
        - (6.0 * alpha).sqrt()
        - 3.0 * (alpha * (5.0 - alpha)).sqrt())
        / 31.5
}

/// Closed form for the PPT family: the first branch up to N_T, then the
/// plateau 4/21.
pub fn analytic_ppt(alpha: f64) -> Result<f64> {
    if !(2.0..=5.0).contains(&alpha) {
        return Err(Error::BadParameter(format!("ppt family needs α in [2, 5], got {alpha}")));
    }
    if alpha <= transition_alpha() {
        Ok(ppt_first_branch(alpha))
    } else {
        Ok(4.0 / 21.0)
    }
}

/// Locate the α where the first branch meets the plateau, by bisection of the
/// branch difference to 1e-9. Agrees with [`transition_alpha`].
pub fn sudden_change_point() -> f64 {
    let diff = |alpha: f64| ppt_first_branch(alpha) - 4.0 / 21.0;
    let (mut lo, mut hi) = (2.0f64, 5.0f64);
    debug_assert!(diff(lo) < 0.0 && diff(hi) > 0.0);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if diff(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Locate the kink of the JAD pipeline itself: the α where q_general stops
/// tracking the rising branch and settles on the plateau. Bisection of the
/// predicate q < 4/21 − 1e-9.
pub fn jad_kink_alpha(opts: &JadOptions, tol: f64) -> Result<f64> {
    let below = |alpha: f64| -> Result<bool> {
        let rho = ppt_family(alpha)?;
        Ok(q_general(&rho, opts)?.q < 4.0 / 21.0 - 1e-9)
    };
    let (mut lo, mut hi) = (2.0f64, 5.0f64);
    if !below(lo)? || below(hi)? {
        return Err(Error::BadParameter("kink bracket lost: q does not switch branch".into()));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if below(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Direct evaluation of −½ Σ_k Tr[√ρ, K_k]² for the basis given as columns of
/// `v`: the literal defining objective, no block reduction.
fn direct_objective(sqrt_rho: &ComplexMatrix, ident_b: &ComplexMatrix, v: &ComplexMatrix) -> f64 {
    let m = v.rows();
    let mut total = 0.0;
    for k in 0..m {
        let col: Vec<Complex64> = (0..m).map(|i| v[(i, k)]).collect();
        let proj = ComplexMatrix::projector(&col)
            .kron(ident_b)
            .expect("projector dimensions are small");
        let commutator = &sqrt_rho.matmul(&proj) - &proj.matmul(sqrt_rho);
        let f = commutator.frobenius_norm();
        total += 0.5 * f * f;
    }
    total
}

fn bloch_basis(theta: f64, phi: f64) -> ComplexMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let phase = Complex64::from_polar(1.0, phi);
    // Columns: |0'⟩ = (cos θ/2, e^{iφ} sin θ/2), |1'⟩ orthogonal.
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(c, 0.0),
            -phase.conj() * s,
            phase * s,
            Complex64::new(c, 0.0),
        ],
    )
    .expect("finite entries")
}

fn brute_force_qubit(sqrt_rho: &ComplexMatrix, n: usize, budget: &OracleBudget) -> f64 {
    let ident_b = ComplexMatrix::identity(n);
    let grid = (budget.grid_points as f64).sqrt().round().max(4.0) as usize;
    let mut best = f64::INFINITY;
    let mut best_angles = (0.0, 0.0);
    for ti in 0..grid {
        let theta = std::f64::consts::PI * ti as f64 / (grid - 1) as f64;
        for fi in 0..grid {
            let phi = 2.0 * std::f64::consts::PI * fi as f64 / grid as f64;
            let f = direct_objective(sqrt_rho, &ident_b, &bloch_basis(theta, phi));
            if f < best {
                best = f;
                best_angles = (theta, phi);
            }
        }
    }
    // Pattern-search refinement from the best grid point.
    let (mut theta, mut phi) = best_angles;
    let mut step = std::f64::consts::PI / (grid - 1) as f64;
    for _ in 0..budget.refine_iters {
        let mut improved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let f = direct_objective(sqrt_rho, &ident_b, &bloch_basis(theta + dt, phi + dp));
            if f < best - 1e-16 {
                best = f;
                theta += dt;
                phi += dp;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-9 {
                break;
            }
        }
    }
    best
}

fn rotate_columns(v: &mut ComplexMatrix, p: usize, q: usize, theta: f64, phi: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    let phase = Complex64::from_polar(1.0, phi);
    let rows = v.rows();
    for i in 0..rows {
        let vp = v[(i, p)];
        let vq = v[(i, q)];
        v[(i, p)] = vp * c + vq * (phase * s);
        v[(i, q)] = vq * c - vp * (phase.conj() * s);
    }
}

fn brute_force_general(
    sqrt_rho: &ComplexMatrix,
    m: usize,
    n: usize,
    budget: &OracleBudget,
) -> f64 {
    let ident_b = ComplexMatrix::identity(n);
    let mut best = f64::INFINITY;
    for restart in 0..budget.restarts {
        let mut v = random_unitary(m, budget.seed.wrapping_add(restart as u64));
        let mut current = direct_objective(sqrt_rho, &ident_b, &v);
        let mut step = 0.5f64;
        for _ in 0..budget.refine_iters {
            let mut improved = false;
            for p in 0..m - 1 {
                for q in (p + 1)..m {
                    for (theta, phi) in [
                        (step, 0.0),
                        (-step, 0.0),
                        (step, std::f64::consts::FRAC_PI_2),
                        (-step, std::f64::consts::FRAC_PI_2),
                    ] {
                        let mut trial = v.clone();
                        rotate_columns(&mut trial, p, q, theta, phi);
                        let f = direct_objective(sqrt_rho, &ident_b, &trial);
                        if f < current - 1e-16 {
                            current = f;
                            v = trial;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                step *= 0.5;
                if step < 1e-9 {
                    break;
                }
            }
        }
        best = best.min(current);
    }
    best
}

/// Brute-force minimization of the defining objective by direct search over
/// projector bases: a grid plus local refinement on the Bloch sphere for
/// m = 2, seeded random starts with plane-rotation hill climbing for m ≥ 3.
/// Guarded to mn ≤ 12.
pub fn brute_force_q(rho: &DensityMatrix, budget: &OracleBudget) -> Result<f64> {
    budget.validate()?;
    let (m, n) = (rho.dim_a(), rho.dim_b());
    if m * n > 12 {
        return Err(Error::DimensionGuard(m * n, 12));
    }
    let sqrt_rho = psd_sqrt(rho)?;
    if m == 1 {
        // The only rank-1 projector basis is {1}, which commutes with √ρ.
        return Ok(0.0);
    }
    if m == 2 {
        Ok(brute_force_qubit(&sqrt_rho, n, budget))
    } else {
        Ok(brute_force_general(&sqrt_rho, m, n, budget))
    }
}

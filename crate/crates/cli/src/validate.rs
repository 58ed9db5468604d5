//! The `validate` subcommand: seeded oracle and property suites with a
//! per-check table of pass counts and worst residuals.

use crate::CliError;
use skewcorr_core::{
    channels, fisher_per_phase, oracle, q_at_basis, q_general, q_pure, q_qubit_qudit,
    quantum_correlation, states, DensityMatrix, JadOptions, OracleBudget,
};

struct Check {
    name: &'static str,
    cases: usize,
    passes: usize,
    worst: f64,
    tol: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.passes == self.cases
    }
}

fn record(name: &'static str, tol: f64, residuals: Vec<f64>) -> Check {
    let cases = residuals.len();
    let passes = residuals.iter().filter(|&&r| r < tol).count();
    let worst = residuals.iter().copied().fold(0.0f64, f64::max);
    Check { name, cases, passes, worst, tol }
}

fn core_err(e: skewcorr_core::Error) -> CliError {
    CliError::state(e.to_string())
}

const PROPERTY_DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

fn properties_suite(seed: u64, cases: usize, opts: &JadOptions) -> Result<Vec<Check>, CliError> {
    let mut invariance = Vec::with_capacity(cases);
    let mut contractivity = Vec::with_capacity(cases);
    let mut pure_reduction = Vec::with_capacity(cases);
    let mut path_consistency = Vec::with_capacity(cases);
    let mut cq_zero = Vec::with_capacity(cases);
    let mut metrology = Vec::with_capacity(cases);

    for k in 0..cases as u64 {
        let (m, n) = PROPERTY_DIMS[(k % 3) as usize];
        let rank = 1 + (k as usize % (m * n));
        let rho = states::random_mixed(m, n, rank, seed.wrapping_add(k)).map_err(core_err)?;
        let base = quantum_correlation(&rho, opts).map_err(core_err)?;

        let u_a = states::random_unitary(m, seed.wrapping_add(0x1000 + k));
        let u_b = states::random_unitary(n, seed.wrapping_add(0x2000 + k));
        let rotated = channels::local_unitary(&rho, &u_a, &u_b).map_err(core_err)?;
        let q_rot = quantum_correlation(&rotated, opts).map_err(core_err)?.q;
        invariance.push((q_rot - base.q).abs());

        let channel = channels::random_channel(n, 1 + (k as usize % 4), seed.wrapping_add(0x3000 + k))
            .map_err(core_err)?;
        let mapped = channels::apply_on_b(&rho, &channel).map_err(core_err)?;
        let q_mapped = quantum_correlation(&mapped, opts).map_err(core_err)?.q;
        contractivity.push(q_mapped - base.q);

        let psi = states::random_pure(m, n, seed.wrapping_add(0x4000 + k));
        let pure_rho = DensityMatrix::from_pure(m, n, &psi).map_err(core_err)?;
        let exact = q_pure(&psi, m, n).map_err(core_err)?.q;
        let via_jad = q_general(&pure_rho, opts).map_err(core_err)?.q;
        pure_reduction.push((via_jad - exact).abs());

        let qd = states::random_mixed(2, 2 + (k as usize % 2), 2 + (k as usize % 3),
            seed.wrapping_add(0x5000 + k))
            .map_err(core_err)?;
        let closed = q_qubit_qudit(&qd).map_err(core_err)?.q;
        let general = q_general(&qd, opts).map_err(core_err)?.q;
        path_consistency.push((closed - general).abs());

        let cq = states::random_classical_quantum(m, n, 1 + (k as usize % m),
            seed.wrapping_add(0x6000 + k))
            .map_err(core_err)?;
        cq_zero.push(q_general(&cq, opts).map_err(core_err)?.q);

        let fisher = fisher_per_phase(&rho, &base.optimal_basis).map_err(core_err)?;
        metrology.push((fisher.iter().sum::<f64>() - 2.0 * base.q).abs());
    }

    Ok(vec![
        record("local-unitary invariance |Δq|", 1e-8, invariance),
        record("CPTP-on-B contractivity excess", 1e-8, contractivity),
        record("pure-state reduction gap", 1e-8, pure_reduction),
        record("qubit-qudit path gap", 1e-8, path_consistency),
        record("classical-quantum q", 1e-9, cq_zero),
        record("metrology ΣF - 2q", 1e-9, metrology),
    ])
}

const SANDWICH_DIMS: [(usize, usize); 5] = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)];

fn oracle_suite(seed: u64, cases: usize, opts: &JadOptions) -> Result<Vec<Check>, CliError> {
    let budget = OracleBudget { seed, ..OracleBudget::default() };
    let sandwich_cases = cases.min(30);
    let mut below = Vec::with_capacity(sandwich_cases);
    let mut above = Vec::with_capacity(sandwich_cases);
    for k in 0..sandwich_cases as u64 {
        let (m, n) = SANDWICH_DIMS[(k % 5) as usize];
        let rank = 1 + (k as usize % (m * n));
        let rho = states::random_mixed(m, n, rank, seed.wrapping_add(0x7000 + k)).map_err(core_err)?;
        let general = q_general(&rho, opts).map_err(core_err)?.q;
        let brute = oracle::brute_force_q(&rho, &budget).map_err(core_err)?;
        below.push(general - brute);
        above.push(brute - general);
    }

    let continuity = (oracle::sudden_change_point() - oracle::transition_alpha()).abs();
    let mut nonneg = Vec::new();
    for m in [2usize, 3, 5, 10] {
        for k in 0..=1000 {
            let x = -1.0 + 2.0 * k as f64 / 1000.0;
            nonneg.push(-oracle::analytic_werner(m, x).map_err(core_err)?);
            let xi = k as f64 / 1000.0;
            nonneg.push(-oracle::analytic_isotropic(m, xi).map_err(core_err)?);
        }
    }

    Ok(vec![
        record("sandwich: general - brute", 1e-6, below),
        record("sandwich: brute - general", 1e-4, above),
        record("ppt branch continuity", 1e-9, vec![continuity]),
        record("formula nonnegativity", 1e-15, nonneg),
    ])
}

fn fixture_checks(
    rho: &DensityMatrix,
    seed: u64,
    opts: &JadOptions,
) -> Result<Vec<Check>, CliError> {
    let result = quantum_correlation(rho, opts).map_err(core_err)?;
    let certificate = (q_at_basis(rho, &result.optimal_basis).map_err(core_err)? - result.q).abs();
    let mut checks = vec![record("fixture basis certificate", 1e-9, vec![certificate])];
    if rho.dim() <= 12 {
        let budget = OracleBudget { seed, ..OracleBudget::default() };
        let brute = oracle::brute_force_q(rho, &budget).map_err(core_err)?;
        let general = q_general(rho, opts).map_err(core_err)?.q;
        checks.push(record("fixture sandwich: general - brute", 1e-6, vec![general - brute]));
        checks.push(record("fixture sandwich: brute - general", 1e-4, vec![brute - general]));
    }
    Ok(checks)
}

pub fn run_suites(
    suite: &str,
    seed: u64,
    cases: usize,
    fixture: Option<&DensityMatrix>,
) -> Result<(), CliError> {
    if cases == 0 {
        return Err(CliError::usage("--cases must be at least 1"));
    }
    let opts = JadOptions { seed, ..JadOptions::default() };
    let mut checks = Vec::new();
    if suite == "properties" || suite == "all" {
        checks.extend(properties_suite(seed, cases, &opts)?);
    }
    if suite == "oracle" || suite == "all" {
        checks.extend(oracle_suite(seed, cases, &opts)?);
    }
    if let Some(rho) = fixture {
        checks.extend(fixture_checks(rho, seed, &opts)?);
    }

    println!("{:<34} {:>6} {:>7} {:>13} {:>9}", "check", "cases", "passes", "worst", "tol");
    let mut failed = false;
    for c in &checks {
        println!(
            "{:<34} {:>6} {:>7} {:>13.3e} {:>9.0e}",
            c.name, c.cases, c.passes, c.worst, c.tol
        );
        failed |= !c.passed();
    }
    if failed {
        return Err(CliError::suite("one or more validation checks failed"));
    }
    println!("all checks passed");
    Ok(())
}

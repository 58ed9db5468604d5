//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its worst residual (visible with `--nocapture`).
//!
//! Run with `cargo test -p skewcorr-core --test acceptance`.

use skewcorr_core::*;

const GRID: usize = 101;
const PPT_GRID: usize = 301;

fn opts() -> JadOptions {
    JadOptions::default()
}

/// Criterion 1: Werner reproduction. For m ∈ {2,…,10} and x on a 101-point
/// grid of [-1, 1], the JAD value tracks the closed form within 1e-6, and
/// q = 0 at x = 1/m within 1e-9.
#[test]
fn criterion_01_werner_reproduction() {
    let opts = opts();
    let mut worst: f64 = 0.0;
    for m in 2..=10usize {
        for k in 0..GRID {
            let x = -1.0 + 2.0 * k as f64 / (GRID - 1) as f64;
            let rho = states::werner(m, x).unwrap();
            let got = q_general(&rho, &opts).unwrap().q;
            let expect = oracle::analytic_werner(m, x).unwrap();
            let gap = (got - expect).abs();
            assert!(gap < 1e-6, "m={m}, x={x}: |{got} - {expect}| = {gap:.3e}");
            worst = worst.max(gap);
        }
        let zero = q_general(&states::werner(m, 1.0 / m as f64).unwrap(), &opts)
            .unwrap()
            .q;
        assert!(zero < 1e-9, "m={m}: q at x=1/m is {zero:.3e}");
    }
    println!("PASS criterion 1 (Werner, 9x{GRID} points): worst gap {worst:.3e}");
}

/// Criterion 2: isotropic reproduction on [0, 1] at 1e-6, with exact zeros at
/// x = 1/m² and q(m, 1) = (m-1)/m, both within 1e-9.
#[test]
fn criterion_02_isotropic_reproduction() {
    let opts = opts();
    let mut worst: f64 = 0.0;
    for m in 2..=10usize {
        for k in 0..GRID {
            let x = k as f64 / (GRID - 1) as f64;
            let rho = states::isotropic(m, x).unwrap();
            let got = q_general(&rho, &opts).unwrap().q;
            let expect = oracle::analytic_isotropic(m, x).unwrap();
            let gap = (got - expect).abs();
            assert!(gap < 1e-6, "m={m}, x={x}: |{got} - {expect}| = {gap:.3e}");
            worst = worst.max(gap);
        }
        let mf = m as f64;
        let zero = q_general(&states::isotropic(m, 1.0 / (mf * mf)).unwrap(), &opts)
            .unwrap()
            .q;
        assert!(zero < 1e-9, "m={m}: q at x=1/m² is {zero:.3e}");
        let top = q_general(&states::isotropic(m, 1.0).unwrap(), &opts).unwrap().q;
        assert!(
            (top - (mf - 1.0) / mf).abs() < 1e-9,
            "m={m}: q at x=1 is {top}, expected {}",
            (mf - 1.0) / mf
        );
    }
    println!("PASS criterion 2 (isotropic, 9x{GRID} points): worst gap {worst:.3e}");
}

/// Criterion 3: PPT reproduction on a 301-point grid of [2, 5] at 1e-6, kink
/// within 1e-3 of 3.066885, plateau exactly 4/21 within 1e-8 for α ≥ 3.2.
#[test]
fn criterion_03_ppt_reproduction() {
    let opts = opts();
    let mut worst: f64 = 0.0;
    let mut worst_plateau: f64 = 0.0;
    for k in 0..PPT_GRID {
        let alpha = 2.0 + 3.0 * k as f64 / (PPT_GRID - 1) as f64;
        let rho = states::ppt_family(alpha).unwrap();
        let got = q_general(&rho, &opts).unwrap().q;
        let expect = oracle::analytic_ppt(alpha).unwrap();
        let gap = (got - expect).abs();
        assert!(gap < 1e-6, "α={alpha}: |{got} - {expect}| = {gap:.3e}");
        worst = worst.max(gap);
        if alpha >= 3.2 {
            let off = (got - 4.0 / 21.0).abs();
            assert!(off < 1e-8, "α={alpha}: plateau off by {off:.3e}");
            worst_plateau = worst_plateau.max(off);
        }
    }
    let kink = oracle::jad_kink_alpha(&opts, 1e-6).unwrap();
    let kink_err = (kink - 3.066885).abs();
    assert!(kink_err < 1e-3, "kink at {kink}, expected 3.066885 ± 1e-3");
    println!(
        "PASS criterion 3 (PPT, {PPT_GRID} points): worst gap {worst:.3e}, \
         plateau off {worst_plateau:.3e}, kink {kink:.6}"
    );
}

/// Criterion 4: for 100 seeded random pure states up to 4⊗4, the JAD path
/// agrees with 1 - Tr ϱ_r² within 1e-8.
#[test]
fn criterion_04_pure_state_reduction() {
    let opts = opts();
    let dims = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2), (3, 4), (4, 3), (4, 4)];
    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let (m, n) = dims[(seed % dims.len() as u64) as usize];
        let psi = states::random_pure(m, n, 0x04_0000 + seed);
        let rho = DensityMatrix::from_pure(m, n, &psi).unwrap();
        let via_jad = q_general(&rho, &opts).unwrap().q;
        let exact = q_pure(&psi, m, n).unwrap().q;
        let gap = (via_jad - exact).abs();
        assert!(gap < 1e-8, "seed {seed} ({m}x{n}): |{via_jad} - {exact}| = {gap:.3e}");
        worst = worst.max(gap);
    }
    println!("PASS criterion 4 (pure reduction, 100 states): worst gap {worst:.3e}");
}

/// Criterion 5: for 100 seeded random mixed 2⊗2 and 2⊗3 states, the closed
/// form and the JAD path agree within 1e-8.
#[test]
fn criterion_05_qubit_qudit_cross_path() {
    let opts = opts();
    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let (m, n) = if seed % 2 == 0 { (2, 2) } else { (2, 3) };
        let rank = 1 + (seed as usize * 7 % (m * n));
        let rho = states::random_mixed(m, n, rank, 0x05_0000 + seed).unwrap();
        let closed = q_qubit_qudit(&rho).unwrap().q;
        let general = q_general(&rho, &opts).unwrap().q;
        let gap = (closed - general).abs();
        assert!(gap < 1e-8, "seed {seed} ({m}x{n}, rank {rank}): gap {gap:.3e}");
        worst = worst.max(gap);
    }
    println!("PASS criterion 5 (qubit-qudit cross-path, 100 states): worst gap {worst:.3e}");
}

/// Criterion 6: 50 seeded classical-quantum states (rotated bases included)
/// give q < 1e-9; 50 seeded entangled pure states give q > 1e-4.
#[test]
fn criterion_06_zero_characterization() {
    let opts = opts();
    let dims = [(2, 2), (2, 3), (3, 2), (3, 3)];
    let mut worst_cq: f64 = 0.0;
    for seed in 0..50u64 {
        let (m, n) = dims[(seed % dims.len() as u64) as usize];
        let k = 1 + (seed as usize % m);
        let rho = states::random_classical_quantum(m, n, k, 0x06_0000 + seed).unwrap();
        let q = q_general(&rho, &opts).unwrap().q;
        assert!(q < 1e-9, "seed {seed} ({m}x{n}, k={k}): q = {q:.3e}");
        worst_cq = worst_cq.max(q);
    }
    let mut min_pure = f64::INFINITY;
    for seed in 0..50u64 {
        let (m, n) = dims[(seed % dims.len() as u64) as usize];
        let psi = states::random_pure(m, n, 0x06_1000 + seed);
        let rho = DensityMatrix::from_pure(m, n, &psi).unwrap();
        let q = q_general(&rho, &opts).unwrap().q;
        assert!(q > 1e-4, "seed {seed} ({m}x{n}): entangled pure q = {q:.3e}");
        min_pure = min_pure.min(q);
    }
    println!(
        "PASS criterion 6 (zero characterization): CQ worst {worst_cq:.3e}, \
         smallest entangled-pure q {min_pure:.3e}"
    );
}

/// Criterion 7: local-unitary invariance |Δq| < 1e-8 and CPTP-on-B
/// contractivity q' ≤ q + 1e-8, 50 seeded cases each across 2⊗2, 2⊗3, 3⊗3.
#[test]
fn criterion_07_property_suites() {
    let opts = opts();
    let dims = [(2, 2), (2, 3), (3, 3)];
    let mut worst_inv: f64 = 0.0;
    let mut worst_excess: f64 = f64::NEG_INFINITY;
    for seed in 0..50u64 {
        let (m, n) = dims[(seed % 3) as usize];
        let rank = 1 + (seed as usize % (m * n));
        let rho = states::random_mixed(m, n, rank, 0x07_0000 + seed).unwrap();
        let q0 = quantum_correlation(&rho, &opts).unwrap().q;

        let u_a = states::random_unitary(m, 0x07_1000 + seed);
        let u_b = states::random_unitary(n, 0x07_2000 + seed);
        let rotated = channels::local_unitary(&rho, &u_a, &u_b).unwrap();
        let q_rot = quantum_correlation(&rotated, &opts).unwrap().q;
        let dq = (q_rot - q0).abs();
        assert!(dq < 1e-8, "seed {seed} ({m}x{n}): |Δq| = {dq:.3e}");
        worst_inv = worst_inv.max(dq);

        let kraus_count = 1 + (seed as usize % 4);
        let channel = channels::random_channel(n, kraus_count, 0x07_3000 + seed).unwrap();
        let contracted = channels::apply_on_b(&rho, &channel).unwrap();
        let q_ch = quantum_correlation(&contracted, &opts).unwrap().q;
        assert!(q_ch <= q0 + 1e-8, "seed {seed} ({m}x{n}): q rose {q0} -> {q_ch}");
        worst_excess = worst_excess.max(q_ch - q0);
    }
    println!(
        "PASS criterion 7 (properties, 50+50 cases): worst |Δq| {worst_inv:.3e}, \
         worst contractivity excess {worst_excess:.3e}"
    );
}

/// Criterion 8: the brute-force basis search stays within
/// [q_general - 1e-6, q_general + 1e-4] on 30 seeded states with mn ≤ 9.
#[test]
fn criterion_08_oracle_sandwich() {
    let opts = opts();
    let budget = OracleBudget::default();
    let dims = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2)];
    let mut worst_below: f64 = f64::NEG_INFINITY;
    let mut worst_above: f64 = f64::NEG_INFINITY;
    for seed in 0..30u64 {
        let (m, n) = dims[(seed % dims.len() as u64) as usize];
        let rank = 1 + (seed as usize * 5 % (m * n));
        let rho = states::random_mixed(m, n, rank, 0x08_0000 + seed).unwrap();
        let general = q_general(&rho, &opts).unwrap().q;
        let brute = oracle::brute_force_q(&rho, &budget).unwrap();
        assert!(
            brute >= general - 1e-6,
            "seed {seed} ({m}x{n}): brute {brute} below general {general} - 1e-6"
        );
        assert!(
            brute <= general + 1e-4,
            "seed {seed} ({m}x{n}): brute {brute} above general {general} + 1e-4"
        );
        worst_below = worst_below.max(general - brute);
        worst_above = worst_above.max(brute - general);
    }
    println!(
        "PASS criterion 8 (oracle sandwich, 30 states): general-brute max {worst_below:.3e}, \
         brute-general max {worst_above:.3e}"
    );
}

/// Criterion 9: Σ_k F_Qk = 2q at the optimal basis, within 1e-9, across the
/// state grids of criteria 1-5.
#[test]
fn criterion_09_metrology_identity() {
    let opts = opts();
    let mut worst: f64 = 0.0;
    let mut count = 0usize;
    let mut check = |rho: &DensityMatrix| {
        let res = quantum_correlation(rho, &opts).unwrap();
        let fisher = fisher_per_phase(rho, &res.optimal_basis).unwrap();
        assert!(fisher.iter().all(|&f| f >= 0.0));
        let total: f64 = fisher.iter().sum();
        let gap = (total - 2.0 * res.q).abs();
        assert!(gap < 1e-9, "ΣF = {total}, 2q = {}", 2.0 * res.q);
        worst = worst.max(gap);
        count += 1;
    };

    for m in 2..=10usize {
        for k in 0..GRID {
            let x = -1.0 + 2.0 * k as f64 / (GRID - 1) as f64;
            check(&states::werner(m, x).unwrap());
            let xi = k as f64 / (GRID - 1) as f64;
            check(&states::isotropic(m, xi).unwrap());
        }
    }
    for k in 0..PPT_GRID {
        let alpha = 2.0 + 3.0 * k as f64 / (PPT_GRID - 1) as f64;
        check(&states::ppt_family(alpha).unwrap());
    }
    let dims = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2), (3, 4), (4, 3), (4, 4)];
    for seed in 0..100u64 {
        let (m, n) = dims[(seed % dims.len() as u64) as usize];
        let psi = states::random_pure(m, n, 0x04_0000 + seed);
        check(&DensityMatrix::from_pure(m, n, &psi).unwrap());
    }
    for seed in 0..100u64 {
        let (m, n) = if seed % 2 == 0 { (2, 2) } else { (2, 3) };
        let rank = 1 + (seed as usize * 7 % (m * n));
        check(&states::random_mixed(m, n, rank, 0x05_0000 + seed).unwrap());
    }
    println!("PASS criterion 9 (metrology identity, {count} states): worst gap {worst:.3e}");
}

/// Criterion 10: JAD unit suite. Monotone objective per applied rotation
/// (1e-13 slack), Frobenius conservation at 1e-10, exact diagonalization of
/// commuting Hermitian sets (off-diagonal mass < 1e-18 of total), and
/// bit-determinism under a fixed seed.
#[test]
fn criterion_10_jad_unit_suite() {
    let opts = opts();

    // Monotonicity and norm conservation on the blocks of a random state,
    // driving the sweeps through the public rotation API.
    let rho = states::random_mixed(4, 3, 7, 0x0A_0000).unwrap();
    let sqrt = psd_sqrt(&rho).unwrap();
    let blocks = extract_blocks(&sqrt, 4, 3).unwrap();
    let set = MatrixSet::from_blocks(&blocks);
    let mut work = set.matrices().to_vec();
    let mut unitary = ComplexMatrix::identity(4);
    let ident = ComplexMatrix::identity(4);
    let current = |mats: &[ComplexMatrix]| -> f64 {
        let tmp = MatrixSet::new(mats.to_vec(), set.weights().to_vec()).unwrap();
        jad::objective(&ident, &tmp).unwrap()
    };
    let mut prev = current(&work);
    let mut applied = 0usize;
    for _sweep in 0..6 {
        for p in 0..3usize {
            for q in (p + 1)..4 {
                let tmp = MatrixSet::new(work.clone(), set.weights().to_vec()).unwrap();
                let rot = jad::best_rotation(&tmp, p, q).unwrap();
                for a in &mut work {
                    rot.conjugate_in_place(a, p, q);
                }
                rot.apply_left(&mut unitary, p, q);
                let now = current(&work);
                assert!(now >= prev - 1e-13, "rotation decreased objective: {prev} -> {now}");
                prev = now;
                applied += 1;
            }
        }
    }
    assert_eq!(applied, 6 * 6);
    let mut worst_norm: f64 = 0.0;
    for (orig, rotated) in set.matrices().iter().zip(&work) {
        worst_norm = worst_norm.max((orig.frobenius_norm() - rotated.frobenius_norm()).abs());
    }
    assert!(worst_norm < 1e-10, "Frobenius norm drifted by {worst_norm:.3e}");
    assert!(unitary.unitarity_residual() < 1e-10);

    // Exactness on a commuting Hermitian set: off-diagonal mass of the
    // rotated matrices, summed directly.
    let basis_change = states::random_unitary(5, 0x0A_1000);
    let diags = [
        [0.9, 0.2, -0.7, 0.4, 0.05],
        [-0.3, 0.8, 0.1, -0.6, 0.5],
        [0.25, -0.25, 0.75, 0.33, -0.9],
    ];
    let mats: Vec<ComplexMatrix> = diags
        .iter()
        .map(|d| {
            basis_change
                .matmul(&ComplexMatrix::from_diagonal(d))
                .matmul(&basis_change.adjoint())
        })
        .collect();
    let commuting = MatrixSet::uniform(mats).unwrap();
    let total = commuting.total_mass();
    let res = jad(&commuting, &opts).unwrap();
    let off_diag: f64 = commuting
        .matrices()
        .iter()
        .zip(commuting.weights())
        .map(|(a, w)| {
            let rotated = res.unitary.matmul(a).matmul(&res.unitary.adjoint());
            let mut acc = 0.0;
            for i in 0..5 {
                for j in 0..5 {
                    if i != j {
                        acc += rotated[(i, j)].norm_sqr();
                    }
                }
            }
            w * acc
        })
        .sum();
    assert!(res.converged);
    assert!(off_diag < 1e-18 * total, "off-diagonal mass {off_diag:.3e} of total {total:.3e}");

    // Bit-determinism.
    let seeded = JadOptions { seed: 0xDEADBEEF, ..JadOptions::default() };
    let a = jad(&set, &seeded).unwrap();
    let b = jad(&set, &seeded).unwrap();
    assert_eq!(a.objective.to_bits(), b.objective.to_bits());
    assert_eq!(a.sweeps_used, b.sweeps_used);
    assert_eq!(a.rotations_used, b.rotations_used);
    assert_eq!(a.converged, b.converged);
    assert_eq!(a.restart_index, b.restart_index);
    for (x, y) in a.unitary.entries().iter().zip(b.unitary.entries()) {
        assert_eq!(x.re.to_bits(), y.re.to_bits());
        assert_eq!(x.im.to_bits(), y.im.to_bits());
    }
    for (dx, dy) in a.joint_diagonals.iter().zip(&b.joint_diagonals) {
        for (x, y) in dx.iter().zip(dy) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    println!(
        "PASS criterion 10 (JAD unit suite): norm drift {worst_norm:.3e}, \
         commuting off-diagonal {:.3e} of total, bit-deterministic",
        off_diag / total
    );
}

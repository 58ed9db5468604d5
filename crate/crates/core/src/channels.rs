//! CPTP maps on subsystem B and local unitaries, used to exercise the
//! invariance and contractivity properties of the correlation measure.

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, DensityMatrix};
use crate::states::random_unitary;

/// Kraus representation of a channel on B, with Σ E_i†E_i = 1 within 1e-10.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::EmptySet);
        }
        let dim = kraus[0].rows();
        for e in &kraus {
            if e.rows() != dim || e.cols() != dim {
                return Err(Error::DimensionMismatch(
                    "Kraus operators must be square of one dimension".into(),
                ));
            }
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for e in &kraus {
            sum = &sum + &e.adjoint().matmul(e);
        }
        let residual = (&sum - &ComplexMatrix::identity(dim)).frobenius_norm();
        if residual > 1e-10 {
            return Err(Error::IncompleteKraus { residual });
        }
        Ok(Self { dim, kraus })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// The identity channel.
    pub fn identity(dim: usize) -> Self {
        Self { dim, kraus: vec![ComplexMatrix::identity(dim)] }
    }

    /// Full depolarization: Kraus set of all matrix units scaled by 1/√n.
    /// Maps every input to 1_n/n.
    pub fn depolarizing(dim: usize) -> Self {
        let scale = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        let mut kraus = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut e = ComplexMatrix::zeros(dim, dim);
                e[(i, j)] = scale;
                kraus.push(e);
            }
        }
        Self { dim, kraus }
    }

    /// Dephasing in the computational basis: diagonal projector Kraus set.
    pub fn dephasing(dim: usize) -> Self {
        let kraus = (0..dim)
            .map(|k| {
                let mut e = ComplexMatrix::zeros(dim, dim);
                e[(k, k)] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();
        Self { dim, kraus }
    }
}

/// ρ' = Σ_i (1_m⊗E_i) ρ (1_m⊗E_i†), evaluated block-wise on the n×n blocks
/// of ρ.
pub fn apply_on_b(rho: &DensityMatrix, channel: &KrausChannel) -> Result<DensityMatrix> {
    let (m, n) = (rho.dim_a(), rho.dim_b());
    if channel.dim != n {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on dimension {}, subsystem B has dimension {n}",
            channel.dim
        )));
    }
    let mut out = ComplexMatrix::zeros(m * n, m * n);
    for a in 0..m {
        for b in 0..m {
            let block = ComplexMatrix::from_fn(n, n, |i, j| rho.mat()[(a * n + i, b * n + j)]);
            let mut acc = ComplexMatrix::zeros(n, n);
            for e in &channel.kraus {
                acc = &acc + &e.matmul(&block).matmul(&e.adjoint());
            }
            for i in 0..n {
                for j in 0..n {
                    out[(a * n + i, b * n + j)] = acc[(i, j)];
                }
            }
        }
    }
    DensityMatrix::new(m, n, out)
}

/// Seeded random channel with `num_kraus` operators, built Stinespring-style
/// from the first block-column of a Haar unitary on n·num_kraus dimensions so
/// completeness holds by construction.
pub fn random_channel(n: usize, num_kraus: usize, seed: u64) -> Result<KrausChannel> {
    if n == 0 || num_kraus == 0 {
        return Err(Error::BadParameter("channel needs n >= 1 and num_kraus >= 1".into()));
    }
    let u = random_unitary(n * num_kraus, seed);
    let kraus = (0..num_kraus)
        .map(|i| ComplexMatrix::from_fn(n, n, |r, c| u[(i * n + r, c)]))
        .collect();
    KrausChannel::new(kraus)
}

/// (U_A⊗U_B) ρ (U_A⊗U_B)†.
pub fn local_unitary(
    rho: &DensityMatrix,
    u_a: &ComplexMatrix,
    u_b: &ComplexMatrix,
) -> Result<DensityMatrix> {
    if u_a.rows() != rho.dim_a() || u_b.rows() != rho.dim_b() {
        return Err(Error::DimensionMismatch(format!(
            "local unitaries must be {}x{} and {}x{}",
            rho.dim_a(),
            rho.dim_a(),
            rho.dim_b(),
            rho.dim_b()
        )));
    }
    for u in [u_a, u_b] {
        let residual = u.unitarity_residual();
        if residual > 1e-8 {
            return Err(Error::NotUnitary { residual, tol: 1e-8 });
        }
    }
    let u = u_a.kron(u_b)?;
    let mat = u.matmul(rho.mat()).matmul(&u.adjoint());
    DensityMatrix::new(rho.dim_a(), rho.dim_b(), mat)
}

//! JSON state files: {"m": int, "n": int, "rho": [[..], ..]} with rho an
//! (mn)×(mn) array of [re, im] pairs, row-major, composite index a·n+b.

use crate::CliError;
use serde::{Deserialize, Serialize};
use skewcorr_core::{Complex64, ComplexMatrix, DensityMatrix};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub m: usize,
    pub n: usize,
    pub rho: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let mat = rho.mat();
        let rows = (0..d)
            .map(|i| (0..d).map(|j| [mat[(i, j)].re, mat[(i, j)].im]).collect())
            .collect();
        Self { m: rho.dim_a(), n: rho.dim_b(), rho: rows }
    }

    pub fn to_density(&self) -> Result<DensityMatrix, CliError> {
        let d = self.m * self.n;
        if self.rho.len() != d || self.rho.iter().any(|row| row.len() != d) {
            return Err(CliError::parse(format!(
                "rho must be a {d}x{d} array for m={}, n={}",
                self.m, self.n
            )));
        }
        let entries: Vec<Complex64> = self
            .rho
            .iter()
            .flat_map(|row| row.iter().map(|[re, im]| Complex64::new(*re, *im)))
            .collect();
        let mat = ComplexMatrix::new(d, d, entries).map_err(|e| CliError::parse(e.to_string()))?;
        DensityMatrix::new(self.m, self.n, mat).map_err(|e| CliError::state(e.to_string()))
    }
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("malformed state file {}: {e}", path.display())))?;
    file.to_density()
}

pub fn write_state(path: &Path, rho: &DensityMatrix) -> Result<(), CliError> {
    let file = StateFile::from_density(rho);
    let text = serde_json::to_string(&file).expect("state files serialize");
    std::fs::write(path, text)?;
    Ok(())
}

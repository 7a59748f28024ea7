use serde::Serialize;

use super::counts::{item_rng, poisson, CountRecord, CountsFile};
use super::reconstruct::reconstruct;
use super::BISEPARABLE_BOUND;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::qcore::{fidelity_pure, StateVector};

pub const DEFAULT_MC_RUNS: usize = 100;

/// Fidelity with its Monte Carlo error bar.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityReport {
    /// Fidelity of the reconstruction from the observed counts.
    #[serde(rename = "F")]
    pub fidelity: f64,
    /// Standard deviation of the fidelity over the resampled runs.
    pub sigma_f: f64,
    /// Mean fidelity over the resampled runs.
    pub mc_mean: f64,
    pub runs: usize,
    pub witness: bool,
    /// Eigenvalues of the reconstructed state, ascending.
    pub eigenvalues: Vec<f64>,
}

/// True iff `fidelity > 0.5`, certifying genuine four-partite entanglement.
pub fn witness(fidelity: f64) -> bool {
    fidelity > BISEPARABLE_BOUND
}

pub fn monte_carlo_fidelity(
    counts: &CountsFile,
    target: &StateVector,
    runs: usize,
    seed: u64,
) -> Result<FidelityReport> {
    monte_carlo_fidelity_with(counts, target, runs, seed, Execution::default())
}

/// Resamples every count from a Poisson distribution with the observed count
/// as mean, reconstructs, and collects the fidelity; run `r` uses seed
/// `seed + r`.
pub fn monte_carlo_fidelity_with(
    counts: &CountsFile,
    target: &StateVector,
    runs: usize,
    seed: u64,
    exec: Execution,
) -> Result<FidelityReport> {
    if runs < 2 {
        return Err(Error::InvalidArgument(format!(
            "Monte Carlo needs at least 2 runs, got {runs}"
        )));
    }
    let observed = reconstruct(counts)?;
    let fidelity = fidelity_pure(&observed.state, target)?;

    let samples = exec.try_map_range(runs, |r| {
        let run_seed = seed.wrapping_add(r as u64);
        let settings = counts
            .settings
            .iter()
            .enumerate()
            .map(|(i, rec)| {
                let mut rng = item_rng(run_seed, i);
                let mut resampled = [0u64; 16];
                for (slot, &n) in resampled.iter_mut().zip(&rec.counts) {
                    *slot = poisson(n as f64, &mut rng);
                }
                CountRecord {
                    bases: rec.bases.clone(),
                    counts: resampled,
                }
            })
            .collect();
        let resampled = CountsFile {
            settings,
            ..counts.clone()
        };
        fidelity_pure(&reconstruct(&resampled)?.state, target)
    })?;

    let mean = samples.iter().sum::<f64>() / runs as f64;
    let var = samples.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
    Ok(FidelityReport {
        fidelity,
        sigma_f: var.sqrt(),
        mc_mean: mean,
        runs,
        witness: witness(fidelity),
        eigenvalues: observed.eigenvalues(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_boundary() {
        assert!(witness(0.62));
        assert!(!witness(0.5));
        assert!(!witness(1.0 / 16.0));
    }
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::settings::{exact_probabilities, MeasurementSetting};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::qcore::DensityMatrix;

pub const COUNTS_SCHEMA: u32 = 1;

/// Counts for the 16 outcomes of one setting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub bases: String,
    pub counts: [u64; 16],
}

impl CountRecord {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// On-disk counts document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub seed: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub settings: Vec<CountRecord>,
}

fn default_schema() -> u32 {
    COUNTS_SCHEMA
}

/// RNG for one work item: the ChaCha stream number separates items that
/// share a seed.
pub(crate) fn item_rng(seed: u64, item: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(item as u64);
    rng
}

pub(crate) fn poisson(mean: f64, rng: &mut ChaCha8Rng) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean)
        .expect("finite positive mean")
        .sample(rng) as u64
}

/// Draws Poissonian counts with mean `N·Tr(ρΠ)` for every projector.
pub fn simulate_counts(
    rho: &DensityMatrix,
    settings: &[MeasurementSetting],
    n_per_setting: u64,
    seed: u64,
    exec: Execution,
) -> Result<CountsFile> {
    if n_per_setting == 0 {
        return Err(Error::InvalidArgument(
            "counts per setting must be at least 1".into(),
        ));
    }
    let probs = exact_probabilities(rho, settings)?;
    let n = n_per_setting as f64;
    let records = exec.map_range(settings.len(), |i| {
        let mut rng = item_rng(seed, i);
        let mut counts = [0u64; 16];
        for (c, p) in counts.iter_mut().zip(&probs[i]) {
            *c = poisson(n * p, &mut rng);
        }
        CountRecord {
            bases: settings[i].label(),
            counts,
        }
    });
    Ok(CountsFile {
        schema: COUNTS_SCHEMA,
        seed,
        n: n_per_setting,
        settings: records,
    })
}

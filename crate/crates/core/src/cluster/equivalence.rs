use serde::Serialize;

use super::resource::{play_cluster_with, ClusterOptions};
use crate::error::Result;
use crate::exec::Execution;
use crate::game::{play_circuit, PayoffPair, PayoffTable, Strategy};

#[derive(Debug, Clone, Serialize)]
pub struct ProfileDiscrepancy {
    pub a: String,
    pub b: String,
    pub circuit: PayoffPair,
    pub cluster: PayoffPair,
    pub projection_probability: f64,
    /// `max(|Δ$_A|, |Δ$_B|)`.
    pub discrepancy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub profiles: Vec<ProfileDiscrepancy>,
    pub max_discrepancy: f64,
}

impl EquivalenceReport {
    pub fn worst(&self) -> Option<&ProfileDiscrepancy> {
        self.profiles
            .iter()
            .max_by(|x, y| x.discrepancy.total_cmp(&y.discrepancy))
    }
}

/// Plays every profile of `grid × grid` through both the circuit and the
/// cluster and records the payoff differences.
pub fn verify_equivalence(
    grid: &[Strategy],
    table: &PayoffTable,
    options: ClusterOptions,
    exec: Execution,
) -> Result<EquivalenceReport> {
    let n = grid.len();
    let profiles = exec.try_map_range(n * n, |k| {
        let (a, b) = (&grid[k / n], &grid[k % n]);
        let circuit = play_circuit(a, b, table)?;
        let run = play_cluster_with(a, b, table, options)?;
        let cluster = run.payoff;
        Ok(ProfileDiscrepancy {
            a: a.to_string(),
            b: b.to_string(),
            circuit,
            cluster,
            projection_probability: run.projection_probability,
            discrepancy: (circuit.a - cluster.a).abs().max((circuit.b - cluster.b).abs()),
        })
    })?;
    let max_discrepancy = profiles.iter().map(|p| p.discrepancy).fold(0.0, f64::max);
    Ok(EquivalenceReport {
        profiles,
        max_discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn experimental_grid() {
        let g = [
            Strategy::C,
            Strategy::D,
            Strategy::Q(FRAC_PI_4),
            Strategy::Q(FRAC_PI_2),
        ];
        let r = verify_equivalence(
            &g,
            &PayoffTable::default(),
            ClusterOptions::default(),
            Execution::default(),
        )
        .unwrap();
        assert_eq!(r.profiles.len(), 16);
        assert!(r.max_discrepancy < 1e-10, "{}", r.max_discrepancy);
    }

    #[test]
    fn classical_grid_and_single_profile() {
        let t = PayoffTable::default();
        let r = verify_equivalence(
            &[Strategy::C, Strategy::D],
            &t,
            ClusterOptions::default(),
            Execution::Sequential,
        )
        .unwrap();
        assert!(r.max_discrepancy < 1e-10);
        let r = verify_equivalence(&[Strategy::C], &t, ClusterOptions::default(), Execution::Sequential)
            .unwrap();
        assert!(r.max_discrepancy < 1e-12);
    }

    #[test]
    fn fault_is_detected() {
        let r = verify_equivalence(
            &[Strategy::C, Strategy::D],
            &PayoffTable::default(),
            ClusterOptions {
                apply_corrections: false,
            },
            Execution::Sequential,
        )
        .unwrap();
        let cd = r.profiles.iter().find(|p| p.a == "c" && p.b == "d").unwrap();
        assert!(cd.discrepancy > 0.5);
    }
}

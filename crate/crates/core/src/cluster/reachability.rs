use std::f64::consts::PI;

use serde::Serialize;

use super::resource::{build_cluster, project_players, Construction};
use crate::error::Result;
use crate::exec::Execution;
use crate::game::{evolve_circuit, Strategy};

/// Below this total-variation distance a target counts as reachable.
const REACHABLE_TV: f64 = 1e-9;

/// `|p00·p11 − p01·p10|`, zero exactly when the two-bit distribution factorizes.
pub fn product_defect(p: &[f64; 4]) -> f64 {
    (p[0] * p[3] - p[1] * p[2]).abs()
}

fn total_variation(p: &[f64; 4], q: &[f64; 4]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Outcome of checking whether `(U(α,0), c)` can be played on the cluster.
#[derive(Debug, Clone, Serialize)]
pub struct ReachabilityReport {
    pub alpha: f64,
    /// Circuit output distribution for `(U(α,0), c)`: `cos²(α/2)` on 00,
    /// `sin²(α/2)` on 11.
    pub circuit_probs: [f64; 4],
    /// Product-form witness of the circuit distribution.
    pub circuit_product_defect: f64,
    /// Largest product defect seen over the cluster search (≈ 0).
    pub cluster_max_product_defect: f64,
    pub min_tv_distance: f64,
    pub best_theta1: f64,
    pub best_theta4: f64,
    /// Bit flips (`σ_y` corrections) on A's and B's output bits at the optimum.
    pub best_flips: (bool, bool),
    pub best_cluster_probs: [f64; 4],
    pub reachable: bool,
    pub explanation: String,
}

pub fn reachability_check(alpha: f64) -> Result<ReachabilityReport> {
    reachability_check_with(alpha, 360, Execution::default())
}

/// Grid search over `θ₁, θ₄ ∈ [−π, π)` with `steps` points per angle and all
/// four correction combinations, minimizing the total-variation distance to
/// the circuit distribution.
pub fn reachability_check_with(
    alpha: f64,
    steps: usize,
    exec: Execution,
) -> Result<ReachabilityReport> {
    let circuit = evolve_circuit(
        &Strategy::General {
            theta: alpha,
            phi: 0.0,
        },
        &Strategy::C,
    )
    .probabilities();
    let target = [circuit[0], circuit[1], circuit[2], circuit[3]];

    let resource = build_cluster(Construction::Direct)?;
    let angle = |k: usize| -PI + 2.0 * PI * k as f64 / steps as f64;

    // (tv, defect, k, flips, probs) for each θ₁ row
    let rows = exec.try_map_range(steps, |i| {
        let mut best = (f64::INFINITY, 0.0_f64, 0usize, (false, false), [0.0; 4]);
        let mut max_defect = 0.0_f64;
        for j in 0..steps {
            let (out, _) = project_players(&resource, angle(i), 0.0, angle(j), 0.0)?;
            let p = out.probabilities();
            let base = [p[0], p[1], p[2], p[3]];
            max_defect = max_defect.max(product_defect(&base));
            for fa in [false, true] {
                for fb in [false, true] {
                    let mut q = [0.0; 4];
                    for (k, v) in base.iter().enumerate() {
                        let (a, b) = ((k >> 1) ^ fa as usize, (k & 1) ^ fb as usize);
                        q[(a << 1) | b] = *v;
                    }
                    let tv = total_variation(&target, &q);
                    if tv < best.0 {
                        best = (tv, 0.0, j, (fa, fb), q);
                    }
                }
            }
        }
        best.1 = max_defect;
        Ok::<_, crate::error::Error>(best)
    })?;

    let cluster_max_product_defect = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let (i, row) = rows
        .iter()
        .enumerate()
        .min_by(|x, y| x.1 .0.total_cmp(&y.1 .0))
        .expect("at least one search row");
    let (min_tv, _, j, flips, probs) = *row;

    let defect = product_defect(&target);
    let reachable = min_tv < REACHABLE_TV;
    let explanation = if reachable {
        format!(
            "U({alpha}, 0) against c yields a product distribution (defect {defect:.3e}); \
             reached on the cluster at θ₁ = {:.4}, θ₄ = {:.4}",
            angle(i),
            angle(j)
        )
    } else {
        format!(
            "U({alpha}, 0) against c yields support {{00, 11}} with p00·p11 − p01·p10 = {defect:.4}, \
             while every cluster distribution factorizes (max defect {cluster_max_product_defect:.1e}); \
             closest cluster outcome is {min_tv:.4} away in total variation"
        )
    };
    Ok(ReachabilityReport {
        alpha,
        circuit_probs: target,
        circuit_product_defect: defect,
        cluster_max_product_defect,
        min_tv_distance: min_tv,
        best_theta1: angle(i),
        best_theta4: angle(j),
        best_flips: flips,
        best_cluster_probs: probs,
        reachable,
        explanation,
    })
}

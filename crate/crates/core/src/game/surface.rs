use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::circuit::play_circuit;
use super::payoff::PayoffTable;
use super::strategy::Strategy;
use crate::error::{Error, Result};
use crate::exec::Execution;

pub const DEFAULT_SWEEP_SAMPLES: usize = 17;

/// One point of the payoff surface over the composite `[d,c] ∪ [c,q]` axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub axis_a: f64,
    pub axis_b: f64,
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
}

/// Samples of the composite strategy axis, as `(t, strategy)` with
/// `t ∈ [−1, 1]`: `t ≤ 0` is `U(−tπ, 0)` (from d at `t = −1` to c at `t = 0`),
/// `t > 0` is `U(0, tπ/2)` (up to `q(π/2)` at `t = 1`).
pub fn composite_axis(samples: usize) -> Result<Vec<(f64, Strategy)>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least 2 samples per axis, got {samples}"
        )));
    }
    Ok((0..samples)
        .map(|k| {
            let t = -1.0 + 2.0 * k as f64 / (samples - 1) as f64;
            let s = if t <= 0.0 {
                Strategy::General {
                    theta: -t * PI,
                    phi: 0.0,
                }
            } else {
                Strategy::General {
                    theta: 0.0,
                    phi: t * FRAC_PI_2,
                }
            };
            (t, s)
        })
        .collect())
}

/// Circuit payoffs over `samples × samples` points of the composite axes,
/// row-major by A.
pub fn sweep_surface(
    samples: usize,
    table: &PayoffTable,
    exec: Execution,
) -> Result<Vec<SurfacePoint>> {
    let axis = composite_axis(samples)?;
    let n = axis.len();
    exec.try_map_range(n * n, |k| {
        let (ta, sa) = axis[k / n];
        let (tb, sb) = axis[k % n];
        let r = play_circuit(&sa, &sb, table)?;
        Ok(SurfacePoint {
            axis_a: ta,
            axis_b: tb,
            payoff_a: r.a,
            payoff_b: r.b,
            p00: r.probs[0],
            p01: r.probs[1],
            p10: r.probs[2],
            p11: r.probs[3],
        })
    })
}

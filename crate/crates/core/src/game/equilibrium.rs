use serde::Serialize;

use super::payoff::PayoffPair;
use super::strategy::Strategy;
use crate::error::Result;
use crate::exec::Execution;

/// Absolute tolerance for payoff ties.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

/// Payoffs for every profile of a finite `grid_a × grid_b`, row-major by A.
#[derive(Debug, Clone, Serialize)]
pub struct PayoffGrid {
    rows: usize,
    cols: usize,
    pairs: Vec<PayoffPair>,
}

impl PayoffGrid {
    /// Evaluates every profile. Results do not depend on `exec`.
    pub fn evaluate<F>(
        grid_a: &[Strategy],
        grid_b: &[Strategy],
        evaluator: F,
        exec: Execution,
    ) -> Result<Self>
    where
        F: Fn(&Strategy, &Strategy) -> Result<PayoffPair> + Sync + Send,
    {
        let (rows, cols) = (grid_a.len(), grid_b.len());
        let pairs = exec.try_map_range(rows * cols, |k| {
            evaluator(&grid_a[k / cols], &grid_b[k % cols])
        })?;
        Ok(Self { rows, cols, pairs })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PayoffPair {
        &self.pairs[i * self.cols + j]
    }

    /// Profiles where neither player gains more than `tol` by a unilateral
    /// switch to another grid strategy.
    pub fn nash(&self, tol: f64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let here = self.get(i, j);
                let a_stays = (0..self.rows).all(|k| self.get(k, j).a <= here.a + tol);
                let b_stays = (0..self.cols).all(|k| self.get(i, k).b <= here.b + tol);
                if a_stays && b_stays {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Profiles no other profile weakly dominates (at least as good for both,
    /// strictly better for one, all beyond `tol`).
    pub fn pareto(&self, tol: f64) -> Vec<(usize, usize)> {
        let dominates = |y: &PayoffPair, x: &PayoffPair| {
            y.a >= x.a - tol && y.b >= x.b - tol && (y.a > x.a + tol || y.b > x.b + tol)
        };
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !self.pairs.iter().any(|y| dominates(y, x)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Nash profiles of the grid under `evaluator`, as `(index in grid_a, index in grid_b)`.
pub fn find_nash<F>(
    grid_a: &[Strategy],
    grid_b: &[Strategy],
    evaluator: F,
    tol: f64,
) -> Result<Vec<(usize, usize)>>
where
    F: Fn(&Strategy, &Strategy) -> Result<PayoffPair> + Sync + Send,
{
    Ok(PayoffGrid::evaluate(grid_a, grid_b, evaluator, Execution::default())?.nash(tol))
}

/// Pareto-optimal profiles of the grid under `evaluator`.
pub fn find_pareto<F>(
    grid_a: &[Strategy],
    grid_b: &[Strategy],
    evaluator: F,
    tol: f64,
) -> Result<Vec<(usize, usize)>>
where
    F: Fn(&Strategy, &Strategy) -> Result<PayoffPair> + Sync + Send,
{
    Ok(PayoffGrid::evaluate(grid_a, grid_b, evaluator, Execution::default())?.pareto(tol))
}

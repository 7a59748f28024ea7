use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PROBABILITY_SUM_TOL: f64 = 1e-9;

/// Player A's payoffs indexed by (A's move, B's move). Player B uses the
/// transposed table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffTable {
    pub cc: f64,
    pub cd: f64,
    pub dc: f64,
    pub dd: f64,
}

impl Default for PayoffTable {
    fn default() -> Self {
        Self {
            cc: 3.0,
            cd: 0.0,
            dc: 5.0,
            dd: 1.0,
        }
    }
}

impl PayoffTable {
    /// Builds a table and warns when it is not a Prisoner's Dilemma.
    pub fn new(cc: f64, cd: f64, dc: f64, dd: f64) -> Self {
        let table = Self { cc, cd, dc, dd };
        if !table.is_dilemma() {
            log::warn!(
                "payoff table {table:?} does not satisfy $(d,c) > $(c,c) > $(d,d) > $(c,d)"
            );
        }
        table
    }

    /// `$(d,c) > $(c,c) > $(d,d) > $(c,d)`.
    pub fn is_dilemma(&self) -> bool {
        self.dc > self.cc && self.cc > self.dd && self.dd > self.cd
    }

    /// A's payoff for outcome bits `(a, b)`, 0 = c and 1 = d.
    pub fn payoff_a(&self, a: usize, b: usize) -> f64 {
        match (a, b) {
            (0, 0) => self.cc,
            (0, 1) => self.cd,
            (1, 0) => self.dc,
            _ => self.dd,
        }
    }

    /// B's payoff for outcome bits `(a, b)`.
    pub fn payoff_b(&self, a: usize, b: usize) -> f64 {
        self.payoff_a(b, a)
    }

    pub fn min(&self) -> f64 {
        self.cc.min(self.cd).min(self.dc).min(self.dd)
    }

    pub fn max(&self) -> f64 {
        self.cc.max(self.cd).max(self.dc).max(self.dd)
    }
}

/// Both players' expected payoffs and the outcome distribution
/// `[p00, p01, p10, p11]` (first bit A, second bit B).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffPair {
    pub a: f64,
    pub b: f64,
    pub probs: [f64; 4],
}

/// Expected payoffs `$_A = Σ $_A(i,j) p_ij` and the transposed sum for B.
pub fn referee_payoff(probs: [f64; 4], table: &PayoffTable) -> Result<PayoffPair> {
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > PROBABILITY_SUM_TOL || probs.iter().any(|p| *p < -PROBABILITY_SUM_TOL)
    {
        return Err(Error::ProbabilitySum(total));
    }
    let (mut a, mut b) = (0.0, 0.0);
    for (k, p) in probs.iter().enumerate() {
        let (i, j) = (k >> 1, k & 1);
        a += table.payoff_a(i, j) * p;
        b += table.payoff_b(i, j) * p;
    }
    Ok(PayoffPair { a, b, probs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn referee_examples() {
        let t = PayoffTable::default();
        let r = referee_payoff([1.0, 0.0, 0.0, 0.0], &t).unwrap();
        assert_eq!((r.a, r.b), (3.0, 3.0));
        let r = referee_payoff([0.0, 0.0, 1.0, 0.0], &t).unwrap();
        assert_eq!((r.a, r.b), (5.0, 0.0));
        let r = referee_payoff([0.25; 4], &t).unwrap();
        assert_eq!((r.a, r.b), (9.0 / 4.0, 9.0 / 4.0));
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(
            referee_payoff([0.5, 0.0, 0.0, 0.0], &PayoffTable::default()),
            Err(Error::ProbabilitySum(_))
        ));
    }

    #[test]
    fn default_is_dilemma() {
        let t = PayoffTable::default();
        assert!(t.is_dilemma());
        assert!(!PayoffTable::new(1.0, 1.0, 1.0, 1.0).is_dilemma());
        assert_eq!((t.min(), t.max()), (0.0, 5.0));
        assert_eq!(t.payoff_b(0, 1), 5.0);
    }

    #[test]
    fn table_json() {
        let t: PayoffTable = serde_json::from_str(r#"{"cc":3,"cd":0,"dc":5,"dd":1}"#).unwrap();
        assert_eq!(t, PayoffTable::default());
    }
}

use super::payoff::{referee_payoff, PayoffPair, PayoffTable};
use super::strategy::{Strategy, StrategyClass};
use crate::error::{Error, Result};
use crate::qcore::{Operator, StateVector};

/// `[H⊗H]·CP·[U_A⊗U_B]·CP·[H⊗H]|00⟩`, or the same circuit with both `CP`
/// layers replaced by identity when `entangle` is false.
pub fn circuit_output(ua: &Operator, ub: &Operator, entangle: bool) -> Result<StateVector> {
    let h = Operator::hadamard();
    let cp = Operator::cphase();
    let mut psi = StateVector::zero(2)?
        .apply(&h, &[1])?
        .apply(&h, &[2])?;
    if entangle {
        psi = psi.apply(&cp, &[1, 2])?;
    }
    psi = psi.apply(ua, &[1])?.apply(ub, &[2])?;
    if entangle {
        psi = psi.apply(&cp, &[1, 2])?;
    }
    psi.apply(&h, &[1])?.apply(&h, &[2])
}

/// Two-qubit output of the game circuit; qubit 1 is A's outcome bit.
pub fn evolve_circuit(a: &Strategy, b: &Strategy) -> StateVector {
    circuit_output(&a.unitary(), &b.unitary(), true)
        .expect("fixed two-qubit circuit is well formed")
}

fn distribution(psi: &StateVector) -> [f64; 4] {
    let p = psi.probabilities();
    [p[0], p[1], p[2], p[3]]
}

/// Simulates the circuit and hands the outcome distribution to the referee.
pub fn play_circuit(a: &Strategy, b: &Strategy, table: &PayoffTable) -> Result<PayoffPair> {
    referee_payoff(distribution(&evolve_circuit(a, b)), table)
}

/// Closed-form outcome probabilities for classes `c`, `d`, `q(α)`.
fn analytic_probs(a: StrategyClass, b: StrategyClass) -> [f64; 4] {
    use StrategyClass::*;
    match (a, b) {
        (C, C) => [1.0, 0.0, 0.0, 0.0],
        (C, D) | (D, C) => [0.0, 0.0, 0.0, 1.0],
        (D, D) => [1.0, 0.0, 0.0, 0.0],
        (C, Q(y)) => [y.cos().powi(2), y.sin().powi(2), 0.0, 0.0],
        (D, Q(y)) => [0.0, 0.0, y.sin().powi(2), y.cos().powi(2)],
        (Q(x), C) => [x.cos().powi(2), 0.0, x.sin().powi(2), 0.0],
        (Q(x), D) => [0.0, x.sin().powi(2), 0.0, x.cos().powi(2)],
        (Q(x), Q(y)) => {
            let (ca, sa, cb, sb) = (x.cos(), x.sin(), y.cos(), y.sin());
            [
                (ca * cb).powi(2),
                (ca * sb).powi(2),
                (sa * cb).powi(2),
                (sa * sb).powi(2),
            ]
        }
    }
}

/// A's payoff straight from the closed-form expressions.
fn analytic_payoff_a(a: StrategyClass, b: StrategyClass, t: &PayoffTable) -> f64 {
    use StrategyClass::*;
    let sq = |x: f64| x * x;
    match (a, b) {
        (C, C) => t.cc,
        (C, D) => t.dd,
        (C, Q(y)) => sq(y.cos()) * t.cc + sq(y.sin()) * t.cd,
        (D, C) => t.dd,
        (D, D) => t.cc,
        (D, Q(y)) => sq(y.sin()) * t.dc + sq(y.cos()) * t.dd,
        (Q(x), C) => sq(x.cos()) * t.cc + sq(x.sin()) * t.dc,
        (Q(x), D) => sq(x.sin()) * t.cd + sq(x.cos()) * t.dd,
        (Q(x), Q(y)) => {
            sq(x.cos() * y.cos()) * t.cc
                + sq(x.cos() * y.sin()) * t.cd
                + sq(x.sin() * y.cos()) * t.dc
                + sq(x.sin() * y.sin()) * t.dd
        }
    }
}

fn analytic_class(s: &Strategy) -> Result<StrategyClass> {
    s.class().map_err(|_| Error::UnsupportedStrategy {
        strategy: s.to_string(),
        reason: "closed-form payoffs cover only c, d and q(α)".into(),
    })
}

/// Payoffs from the closed-form table, without simulation. B's payoff uses
/// the symmetry `$_B(s_A, s_B) = $_A(s_B, s_A)`.
pub fn analytic_payoff(a: &Strategy, b: &Strategy, table: &PayoffTable) -> Result<PayoffPair> {
    let (ka, kb) = (analytic_class(a)?, analytic_class(b)?);
    Ok(PayoffPair {
        a: analytic_payoff_a(ka, kb, table),
        b: analytic_payoff_a(kb, ka, table),
        probs: analytic_probs(ka, kb),
    })
}

/// Classical game on `{c, d}²`, computed by table lookup and by the circuit
/// with the entangling layers removed. Both routes must agree.
pub fn play_classical(a: &Strategy, b: &Strategy, table: &PayoffTable) -> Result<PayoffPair> {
    let bit = |s: &Strategy| -> Result<usize> {
        match s.class() {
            Ok(StrategyClass::C) => Ok(0),
            Ok(StrategyClass::D) => Ok(1),
            _ => Err(Error::UnsupportedStrategy {
                strategy: s.to_string(),
                reason: "the classical game only has c and d".into(),
            }),
        }
    };
    let (i, j) = (bit(a)?, bit(b)?);
    let lookup = (table.payoff_a(i, j), table.payoff_b(i, j));

    let psi = circuit_output(&a.unitary(), &b.unitary(), false)?;
    let simulated = referee_payoff(distribution(&psi), table)?;
    // The unentangled circuit is a pair of deterministic bit flips, so the
    // outcome must be exact up to rounding of H·U·H.
    if (simulated.a - lookup.0).abs() > 1e-12 || (simulated.b - lookup.1).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "classical lookup {lookup:?} disagrees with unentangled circuit ({}, {})",
            simulated.a, simulated.b
        )));
    }
    let mut probs = [0.0; 4];
    probs[(i << 1) | j] = 1.0;
    Ok(PayoffPair {
        a: lookup.0,
        b: lookup.1,
        probs,
    })
}

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qcore::Operator;

const ANGLE_TOL: f64 = 1e-12;

/// A player's move.
///
/// `C = U(0,0)`, `D = U(π,0)`, `Q(α) = U(0,α)`; `General` takes any `(θ, φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    C,
    D,
    Q(f64),
    General { theta: f64, phi: f64 },
}

/// The strategy classes reachable on the four-qubit cluster, and covered by
/// the closed-form payoff expressions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategyClass {
    C,
    D,
    Q(f64),
}

impl Strategy {
    /// Resolved `(θ, φ)`.
    pub fn params(&self) -> (f64, f64) {
        match *self {
            Strategy::C => (0.0, 0.0),
            Strategy::D => (PI, 0.0),
            Strategy::Q(alpha) => (0.0, alpha),
            Strategy::General { theta, phi } => (theta, phi),
        }
    }

    pub fn unitary(&self) -> Operator {
        strategy_unitary(self)
    }

    /// Maps the strategy to `c`, `d` or `q(α)`.
    ///
    /// `U(0, φ)` is `q(φ)` and `U(π, φ)` does not depend on `φ`, so it is `d`.
    /// Anything else has no counterpart on the four-qubit cluster.
    pub fn class(&self) -> Result<StrategyClass> {
        match *self {
            Strategy::C => Ok(StrategyClass::C),
            Strategy::D => Ok(StrategyClass::D),
            Strategy::Q(alpha) => Ok(StrategyClass::Q(alpha)),
            Strategy::General { theta, phi } => {
                if theta.abs() <= ANGLE_TOL {
                    if phi.abs() <= ANGLE_TOL {
                        Ok(StrategyClass::C)
                    } else {
                        Ok(StrategyClass::Q(phi))
                    }
                } else if (theta - PI).abs() <= ANGLE_TOL {
                    Ok(StrategyClass::D)
                } else {
                    Err(Error::UnsupportedStrategy {
                        strategy: self.to_string(),
                        reason: "only c, d and q(α) = U(0, α) are in this strategy class".into(),
                    })
                }
            }
        }
    }

    /// True when `(θ, φ)` lies in `θ ∈ [0, π]`, `φ ∈ [0, π/2]`.
    pub fn in_standard_domain(&self) -> bool {
        let (theta, phi) = self.params();
        (-ANGLE_TOL..=PI + ANGLE_TOL).contains(&theta)
            && (-ANGLE_TOL..=PI / 2.0 + ANGLE_TOL).contains(&phi)
    }
}

/// `U(θ, φ)` for the strategy. Parameters outside the standard domain are
/// allowed (the payoff surface runs `θ` from `π` down to `0`) but logged.
pub fn strategy_unitary(s: &Strategy) -> Operator {
    if !s.in_standard_domain() {
        log::warn!("strategy {s} lies outside θ ∈ [0, π], φ ∈ [0, π/2]");
    }
    let (theta, phi) = s.params();
    Operator::strategy(theta, phi)
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::C => write!(f, "c"),
            Strategy::D => write!(f, "d"),
            Strategy::Q(alpha) => write!(f, "q:{alpha}"),
            Strategy::General { theta, phi } => write!(f, "g:{theta}:{phi}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// Parses `c`, `d`, `q:<α>` or `g:<θ>:<φ>` with angles in radians.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::StrategyParse(s.to_string());
        let angle = |t: &str| -> Result<f64> {
            let v: f64 = t.trim().parse().map_err(|_| bad())?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            [k] if k.eq_ignore_ascii_case("c") => Ok(Strategy::C),
            [k] if k.eq_ignore_ascii_case("d") => Ok(Strategy::D),
            [k, a] if k.eq_ignore_ascii_case("q") => Ok(Strategy::Q(angle(a)?)),
            [k, t, p] if k.eq_ignore_ascii_case("g") => Ok(Strategy::General {
                theta: angle(t)?,
                phi: angle(p)?,
            }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{c, cr, EXACT_TOL};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn unitary_examples() {
        assert!(Strategy::C
            .unitary()
            .approx_eq(&Operator::identity(2), EXACT_TOL));
        let d = Operator::from_rows(2, &[cr(0.0), cr(-1.0), cr(1.0), cr(0.0)]).unwrap();
        assert!(Strategy::D.unitary().approx_eq(&d, EXACT_TOL));
        let q = Operator::from_rows(2, &[c(0.0, -1.0), cr(0.0), cr(0.0), c(0.0, 1.0)]).unwrap();
        assert!(Strategy::Q(FRAC_PI_2).unitary().approx_eq(&q, EXACT_TOL));
    }

    #[test]
    fn q_zero_is_c() {
        assert_eq!(Strategy::Q(0.0).params(), Strategy::C.params());
        assert!(Strategy::Q(0.0)
            .unitary()
            .approx_eq(&Strategy::C.unitary(), 0.0));
    }

    #[test]
    fn general_resolution() {
        let g = |theta, phi| Strategy::General { theta, phi };
        assert_eq!(g(0.0, 0.0).class().unwrap(), StrategyClass::C);
        assert_eq!(g(0.0, 0.4).class().unwrap(), StrategyClass::Q(0.4));
        assert_eq!(g(PI, 0.4).class().unwrap(), StrategyClass::D);
        assert!(matches!(
            g(1.0, 0.3).class(),
            Err(Error::UnsupportedStrategy { .. })
        ));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["c", "d", "q:0.7854", "g:1:0.3", "Q:1.5"] {
            let parsed: Strategy = s.parse().unwrap();
            let again: Strategy = parsed.to_string().parse().unwrap();
            assert_eq!(parsed, again);
        }
        assert_eq!("q:0.5".parse::<Strategy>().unwrap(), Strategy::Q(0.5));
        for bad in ["", "x", "q", "q:abc", "g:1", "c:1", "q:inf"] {
            assert!(bad.parse::<Strategy>().is_err(), "{bad}");
        }
    }

    #[test]
    fn domain_check() {
        assert!(Strategy::D.in_standard_domain());
        assert!(!Strategy::General { theta: -0.1, phi: 0.0 }.in_standard_domain());
        assert!(!Strategy::Q(2.0).in_standard_domain());
    }
}

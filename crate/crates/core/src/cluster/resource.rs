use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{referee_payoff, PayoffPair, PayoffTable, Strategy, StrategyClass};
use crate::qcore::{alpha_ket, c, cr, Operator, StateVector, C64};

/// How the four-qubit resource is prepared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Construction {
    /// `½(|0000⟩ + |0011⟩ + |1100⟩ − |1111⟩)` written down directly.
    Direct,
    /// `|+⟩^⊗4` with `CP` on the box edges 1–2, 2–3, 3–4, 4–1.
    Graph,
}

/// Box edges of the graph construction.
pub const BOX_EDGES: [(usize, usize); 4] = [(1, 2), (2, 3), (3, 4), (4, 1)];

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResource {
    state: StateVector,
    construction: Construction,
}

impl ClusterResource {
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    /// Brings a graph-built resource into the direct convention by
    /// `H^⊗4` followed by relabeling qubits 2 and 3. Equal to the direct
    /// state up to a global phase.
    pub fn to_direct(&self) -> Result<ClusterResource> {
        match self.construction {
            Construction::Direct => Ok(self.clone()),
            Construction::Graph => {
                let h = Operator::hadamard();
                let mut s = self.state.clone();
                for q in 1..=4 {
                    s = s.apply(&h, &[q])?;
                }
                Ok(ClusterResource {
                    state: s.swap_qubits(2, 3)?,
                    construction: Construction::Direct,
                })
            }
        }
    }
}

pub fn build_cluster(construction: Construction) -> Result<ClusterResource> {
    let state = match construction {
        Construction::Direct => {
            let mut a = [0.0; 16];
            a[0b0000] = 0.5;
            a[0b0011] = 0.5;
            a[0b1100] = 0.5;
            a[0b1111] = -0.5;
            StateVector::from_real(4, &a)?
        }
        Construction::Graph => {
            let h = Operator::hadamard();
            let cp = Operator::cphase();
            let mut s = StateVector::zero(4)?;
            for q in 1..=4 {
                s = s.apply(&h, &[q])?;
            }
            for (i, j) in BOX_EDGES {
                s = s.apply(&cp, &[i, j])?;
            }
            s
        }
    };
    Ok(ClusterResource {
        state,
        construction,
    })
}

/// Projects qubits 1 and 4 and returns the state of qubits 2, 3 (qubit 2 most
/// significant) with the joint projection probability.
///
/// The result is
/// `cosθ₁cosθ₄|00⟩ + e^{iφ₄}cosθ₁sinθ₄|01⟩ + e^{iφ₁}sinθ₁cosθ₄|10⟩ − e^{i(φ₁+φ₄)}sinθ₁sinθ₄|11⟩`
/// up to normalization.
pub fn project_players(
    resource: &ClusterResource,
    theta1: f64,
    phi1: f64,
    theta4: f64,
    phi4: f64,
) -> Result<(StateVector, f64)> {
    if resource.construction != Construction::Direct {
        return Err(Error::InvalidArgument(
            "player projections expect the direct convention; call to_direct() first".into(),
        ));
    }
    // Bra is cosθ⟨0| + e^{iφ} sinθ⟨1|.
    let ket = |theta: f64, phi: f64| [cr(theta.cos()), C64::from_polar(theta.sin(), -phi)];
    let (rest, p1) = resource.state.project_qubit(1, ket(theta1, phi1))?;
    // Qubit 4 is now the third qubit of the reduced register.
    let (out, p4) = rest.project_qubit(3, ket(theta4, phi4))?;
    Ok((out, p1 * p4))
}

/// Local correction a player applies to an output qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Correction {
    Identity,
    SigmaY,
}

impl Correction {
    pub fn operator(self) -> Operator {
        match self {
            Correction::Identity => Operator::identity(2),
            Correction::SigmaY => Operator::pauli_y(),
        }
    }
}

/// Projection parameters and corrections for one strategy profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementPlan {
    pub theta1: f64,
    pub phi1: f64,
    pub theta4: f64,
    pub phi4: f64,
    /// Applied to qubit 3.
    pub correction_a: Correction,
    /// Applied to qubit 2.
    pub correction_b: Correction,
}

const SIX_PHOTON: &str = "U(θ, φ) with θ ∉ {0, π} cannot be implemented on the four-qubit box \
     cluster; a six-photon cluster is required for the full strategy space";

/// Maps a profile of `c`, `d`, `q(α)` to projection angles and corrections:
/// `c → 0`, `d → −π/2` with `σ_y`, `q(α) → α`.
pub fn strategy_to_plan(a: &Strategy, b: &Strategy) -> Result<MeasurementPlan> {
    let resolve = |s: &Strategy| -> Result<(f64, Correction)> {
        match s.class() {
            Ok(StrategyClass::C) => Ok((0.0, Correction::Identity)),
            Ok(StrategyClass::D) => Ok((-FRAC_PI_2, Correction::SigmaY)),
            Ok(StrategyClass::Q(alpha)) => Ok((alpha, Correction::Identity)),
            Err(_) => Err(Error::UnsupportedStrategy {
                strategy: s.to_string(),
                reason: SIX_PHOTON.into(),
            }),
        }
    };
    let (theta1, correction_a) = resolve(a)?;
    let (theta4, correction_b) = resolve(b)?;
    Ok(MeasurementPlan {
        theta1,
        phi1: 0.0,
        theta4,
        phi4: 0.0,
        correction_a,
        correction_b,
    })
}

/// Switches for fault injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterOptions {
    pub apply_corrections: bool,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        Self {
            apply_corrections: true,
        }
    }
}

/// Everything one cluster run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterOutcome {
    pub plan: MeasurementPlan,
    /// Final state of qubits 2 and 3.
    pub output: StateVector,
    /// Probability of the post-selected projection outcome.
    pub projection_probability: f64,
    pub payoff: PayoffPair,
}

/// Projects, corrects and referees one plan.
pub fn run_cluster(
    resource: &ClusterResource,
    plan: &MeasurementPlan,
    table: &PayoffTable,
    options: ClusterOptions,
) -> Result<ClusterOutcome> {
    let (mut out, p) = project_players(resource, plan.theta1, plan.phi1, plan.theta4, plan.phi4)?;
    if options.apply_corrections {
        out = out
            .apply(&plan.correction_b.operator(), &[1])?
            .apply(&plan.correction_a.operator(), &[2])?;
    }
    // Register order is (qubit 2, qubit 3) = (A's bit, B's bit).
    let probs = out.probabilities();
    let payoff = referee_payoff([probs[0], probs[1], probs[2], probs[3]], table)?;
    Ok(ClusterOutcome {
        plan: *plan,
        output: out,
        projection_probability: p,
        payoff,
    })
}

pub fn play_cluster_with(
    a: &Strategy,
    b: &Strategy,
    table: &PayoffTable,
    options: ClusterOptions,
) -> Result<ClusterOutcome> {
    let resource = build_cluster(Construction::Direct)?;
    let plan = strategy_to_plan(a, b)?;
    run_cluster(&resource, &plan, table, options)
}

pub fn play_cluster(a: &Strategy, b: &Strategy, table: &PayoffTable) -> Result<PayoffPair> {
    Ok(play_cluster_with(a, b, table, ClusterOptions::default())?.payoff)
}

/// One-bit teleportation on a two-qubit linear cluster: `input ⊗ |+⟩`, `CP`,
/// then qubit 1 projected onto `(|0⟩ + e^{iα}|1⟩)/√2`. Leaves
/// `H·R_z(α)|input⟩` on the remaining qubit (up to global phase).
pub fn teleport_one_bit(input: &StateVector, alpha: f64) -> Result<(StateVector, f64)> {
    if input.n_qubits() != 1 {
        return Err(Error::InvalidArgument(
            "one-bit teleportation takes a single-qubit input".into(),
        ));
    }
    let plus = StateVector::new(1, vec![c(1.0, 0.0), c(1.0, 0.0)])?;
    input
        .tensor(&plus)?
        .apply(&Operator::cphase(), &[1, 2])?
        .project_qubit(1, alpha_ket(alpha, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{bitstring_distribution, ACCUMULATED_TOL, EXACT_TOL};
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn direct_and_graph_agree() {
        let direct = build_cluster(Construction::Direct).unwrap();
        assert!((direct.state().amplitude(0b1111) - cr(-0.5)).norm() < EXACT_TOL);
        let graph = build_cluster(Construction::Graph).unwrap().to_direct().unwrap();
        let o = graph.state().overlap(direct.state()).unwrap();
        assert!((o - 1.0).abs() < ACCUMULATED_TOL, "{o}");
        for (b, p) in bitstring_distribution(direct.state()) {
            let want = if ["0000", "0011", "1100", "1111"].contains(&b.as_str()) {
                0.25
            } else {
                0.0
            };
            assert!((p - want).abs() < EXACT_TOL);
        }
    }

    #[test]
    fn graph_needs_conversion() {
        let graph = build_cluster(Construction::Graph).unwrap();
        assert!(project_players(&graph, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn projection_examples() {
        let r = build_cluster(Construction::Direct).unwrap();
        let (s, p) = project_players(&r, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!((s.amplitude(0) - cr(1.0)).norm() < EXACT_TOL);
        assert!((p - 0.25).abs() < EXACT_TOL);

        let (s, _) = project_players(&r, -FRAC_PI_2, 0.0, -FRAC_PI_2, 0.0).unwrap();
        let m11 = StateVector::from_real(2, &[0.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(s.equals_up_to_phase(&m11, ACCUMULATED_TOL));

        let a = 0.7;
        let (s, _) = project_players(&r, 0.0, 0.0, a, 0.0).unwrap();
        let want = StateVector::from_real(2, &[a.cos(), a.sin(), 0.0, 0.0]).unwrap();
        assert!((s.inner(&want).unwrap() - cr(1.0)).norm() < EXACT_TOL);
    }

    #[test]
    fn projection_with_phases_matches_closed_form() {
        let r = build_cluster(Construction::Direct).unwrap();
        let (t1, f1, t4, f4) = (0.4, 1.3, -0.9, 0.25);
        let (s, _) = project_players(&r, t1, f1, t4, f4).unwrap();
        let want = StateVector::new(
            2,
            vec![
                cr(t1.cos() * t4.cos()),
                C64::from_polar(t1.cos() * t4.sin(), f4),
                C64::from_polar(t1.sin() * t4.cos(), f1),
                -C64::from_polar(t1.sin() * t4.sin(), f1 + f4),
            ],
        )
        .unwrap();
        assert!((s.inner(&want).unwrap() - cr(1.0)).norm() < EXACT_TOL);
    }

    #[test]
    fn plan_examples() {
        let p = strategy_to_plan(&Strategy::C, &Strategy::C).unwrap();
        assert_eq!((p.theta1, p.theta4), (0.0, 0.0));
        assert_eq!((p.correction_a, p.correction_b), (Correction::Identity, Correction::Identity));

        let p = strategy_to_plan(&Strategy::D, &Strategy::D).unwrap();
        assert_eq!((p.theta1, p.theta4), (-FRAC_PI_2, -FRAC_PI_2));
        assert_eq!((p.correction_a, p.correction_b), (Correction::SigmaY, Correction::SigmaY));

        let p = strategy_to_plan(&Strategy::C, &Strategy::Q(FRAC_PI_4)).unwrap();
        assert_eq!((p.theta1, p.theta4), (0.0, FRAC_PI_4));
        assert_eq!((p.phi1, p.phi4), (0.0, 0.0));

        let err = strategy_to_plan(&Strategy::General { theta: 1.0, phi: 0.3 }, &Strategy::C);
        match err {
            Err(Error::UnsupportedStrategy { reason, .. }) => assert!(reason.contains("six-photon")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn play_examples() {
        let t = PayoffTable::default();
        let r = play_cluster(&Strategy::C, &Strategy::C, &t).unwrap();
        assert!((r.a - 3.0).abs() < EXACT_TOL && (r.b - 3.0).abs() < EXACT_TOL);
        let r = play_cluster(&Strategy::D, &Strategy::D, &t).unwrap();
        assert!((r.a - 3.0).abs() < EXACT_TOL && (r.b - 3.0).abs() < EXACT_TOL);
        let r = play_cluster(&Strategy::D, &Strategy::Q(FRAC_PI_2), &t).unwrap();
        assert!((r.a - 5.0).abs() < EXACT_TOL && r.b.abs() < EXACT_TOL);
    }

    #[test]
    fn postselection_probability_reported() {
        let t = PayoffTable::default();
        let o = play_cluster_with(&Strategy::Q(0.3), &Strategy::D, &t, ClusterOptions::default())
            .unwrap();
        assert!((o.projection_probability - 0.25).abs() < EXACT_TOL);
    }

    #[test]
    fn disabled_corrections_break_cd() {
        let t = PayoffTable::default();
        let o = play_cluster_with(
            &Strategy::C,
            &Strategy::D,
            &t,
            ClusterOptions {
                apply_corrections: false,
            },
        )
        .unwrap();
        assert!((o.payoff.a - 1.0).abs() > 0.5);
    }

    #[test]
    fn teleportation_applies_h_rz() {
        let input = StateVector::new(1, vec![c(0.6, 0.1), c(-0.2, 0.7)]).unwrap();
        for k in 0..8 {
            let alpha = -PI + k as f64 * 0.8;
            let (out, p) = teleport_one_bit(&input, alpha).unwrap();
            let want = input
                .apply(&Operator::rz(alpha), &[1])
                .unwrap()
                .apply(&Operator::hadamard(), &[1])
                .unwrap();
            assert!(out.equals_up_to_phase(&want, ACCUMULATED_TOL));
            assert!((p - 0.5).abs() < ACCUMULATED_TOL);
        }
    }
}

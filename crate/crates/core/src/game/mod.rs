//! Gate-model quantum Prisoner's Dilemma.
//!
//! Each player applies a strategy unitary `U(θ, φ)` between two layers of
//! `H⊗H · CP`. The referee measures both qubits in the computational basis
//! and pays out according to a classical [`PayoffTable`]; qubit 1 carries
//! A's bit and qubit 2 B's bit.

mod circuit;
mod equilibrium;
mod payoff;
mod strategy;
mod surface;

pub use circuit::{
    analytic_payoff, circuit_output, evolve_circuit, play_circuit, play_classical,
};
pub use equilibrium::{find_nash, find_pareto, PayoffGrid, DEFAULT_TIE_TOL};
pub use payoff::{referee_payoff, PayoffPair, PayoffTable};
pub use strategy::{strategy_unitary, Strategy, StrategyClass};
pub use surface::{composite_axis, sweep_surface, SurfacePoint, DEFAULT_SWEEP_SAMPLES};

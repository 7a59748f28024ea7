//! Quantum Prisoner's Dilemma on a four-qubit box cluster.
//!
//! The crate simulates the two-player quantum game in two equivalent ways:
//!
//! * [`game`]: the gate-model circuit `H⊗H · CP · (U_A⊗U_B) · CP · H⊗H |00⟩`
//!   followed by a referee that turns computational-basis probabilities into
//!   payoffs, plus Nash / Pareto analysis over finite strategy grids.
//! * [`cluster`]: the measurement-based version, where both players project
//!   one photon each of the four-qubit cluster state and apply a `σ_y`
//!   correction when they defect.
//!
//! [`tomography`] simulates full local-Pauli state tomography of the cluster
//! resource with Poissonian counts, linear-inversion reconstruction, and Monte
//! Carlo error bars. [`cli`] wires everything into the `cluster-game` binary.
//!
//! Everything is built on the small dense state-vector engine in [`qcore`].

pub mod cli;
pub mod cluster;
pub mod error;
pub mod exec;
pub mod game;
pub mod qcore;
pub mod tomography;

pub use error::{Error, Result};
pub use exec::Execution;

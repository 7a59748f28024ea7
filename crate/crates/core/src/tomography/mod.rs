//! Simulated four-qubit state tomography with Monte Carlo error bars.
//!
//! Every qubit is measured in one of the Z, X, Y bases (81 settings), each
//! setting recording all 16 outcomes. Counts are Poissonian. Reconstruction is
//! least-squares linear inversion onto the Pauli operator basis followed by a
//! projection onto the nearest physical state in Frobenius norm.

mod counts;
mod montecarlo;
mod noise;
mod reconstruct;
mod settings;

pub use counts::{simulate_counts, CountRecord, CountsFile, COUNTS_SCHEMA};
pub use montecarlo::{
    monte_carlo_fidelity, monte_carlo_fidelity_with, witness, FidelityReport, DEFAULT_MC_RUNS,
};
pub use noise::{noise_state, NoiseModel, DEPHASING_DRAWS};
pub use reconstruct::{
    nearest_physical, reconstruct, reconstruct_probabilities, simplex_projection, Reconstruction,
};
pub use settings::{exact_probabilities, generate_settings, Basis, MeasurementSetting, N_QUBITS};

/// Default counts per setting.
pub const DEFAULT_COUNTS_PER_SETTING: u64 = 500;
/// Fidelity above which a state is certified as genuinely four-partite entangled.
pub const BISEPARABLE_BOUND: f64 = 0.5;

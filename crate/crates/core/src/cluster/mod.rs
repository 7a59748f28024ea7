//! Measurement-based (one-way) version of the game on the four-qubit box cluster.
//!
//! Player A projects qubit 1 and player B qubit 4 onto `cos θ|0⟩ + sin θ|1⟩`;
//! the remaining qubits 2 and 3 hold the game output after a `σ_y`
//! correction for each defecting player (B's on qubit 2, A's on qubit 3).
//! The referee reads A's bit from qubit 2 and B's bit from qubit 3.

mod equivalence;
mod reachability;
mod resource;

pub use equivalence::{verify_equivalence, EquivalenceReport, ProfileDiscrepancy};
pub use reachability::{
    product_defect, reachability_check, reachability_check_with, ReachabilityReport,
};
pub use resource::{
    build_cluster, play_cluster, play_cluster_with, project_players, run_cluster,
    strategy_to_plan, teleport_one_bit, ClusterOptions, ClusterOutcome, ClusterResource,
    Construction, Correction, MeasurementPlan,
};

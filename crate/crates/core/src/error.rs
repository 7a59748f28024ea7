use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected {expected} amplitudes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("qubit count {0} outside supported range 1..=12")]
    QubitCount(usize),

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register (qubits are numbered from 1)")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("qubit {0} appears more than once in the target list")]
    DuplicateTarget(usize),

    #[error("operator of dimension {dim} cannot act on {targets} target qubit(s)")]
    OperatorSize { dim: usize, targets: usize },

    #[error("unknown gate '{0}'")]
    UnknownGate(String),

    #[error("gate {gate} takes {expected} parameter(s), got {got}")]
    GateParameters {
        gate: String,
        expected: usize,
        got: usize,
    },

    #[error("projection ket is not normalized (norm² = {0})")]
    KetNotNormalized(f64),

    #[error("projection onto an orthogonal outcome (probability {0:e})")]
    OrthogonalOutcome(f64),

    #[error("probabilities sum to {0}, expected 1")]
    ProbabilitySum(f64),

    #[error("unsupported strategy {strategy}: {reason}")]
    UnsupportedStrategy { strategy: String, reason: String },

    #[error("invalid strategy '{0}': expected c, d, q:<alpha> or g:<theta>:<phi>")]
    StrategyParse(String),

    #[error("matrix is not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("tomography data is missing setting {0}")]
    MissingSetting(String),

    #[error("tomography setting {0} has no counts")]
    EmptySetting(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

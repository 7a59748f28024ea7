//! Dense complex state-vector engine.
//!
//! Qubits are numbered from 1 and qubit 1 is the most significant bit of the
//! basis index, so `|q1 q2 q3 q4⟩` maps to index `q1·8 + q2·4 + q3·2 + q4`.

mod density;
mod operator;
mod state;

pub use density::{fidelity_pure, DensityMatrix};
pub use operator::{gate, Operator};
pub use state::{bitstring_distribution, StateVector};

pub use num_complex::Complex64 as C64;

/// Tolerance for exact algebra (single gates, projections).
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for accumulated products.
pub const ACCUMULATED_TOL: f64 = 1e-10;
/// Maximum register size.
pub const MAX_QUBITS: usize = 12;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Unit ket `cos θ|0⟩ + e^{iφ} sin θ|1⟩`.
pub fn angle_ket(theta: f64, phi: f64) -> [C64; 2] {
    [cr(theta.cos()), C64::from_polar(theta.sin(), phi)]
}

/// Measurement-basis ket `(|0⟩ ± e^{iα}|1⟩)/√2`.
pub fn alpha_ket(alpha: f64, plus: bool) -> [C64; 2] {
    let s = if plus { 1.0 } else { -1.0 };
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [cr(r), C64::from_polar(s * r, alpha)]
}

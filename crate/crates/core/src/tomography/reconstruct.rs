use std::collections::HashMap;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use super::counts::CountsFile;
use super::settings::{generate_settings, Basis, MeasurementSetting, N_QUBITS};
use crate::error::{Error, Result};
use crate::qcore::{cr, DensityMatrix, Operator, C64};

const DIM: usize = 1 << N_QUBITS;
const N_PAULI: usize = DIM * DIM;
const N_OUTCOMES: usize = 16;

/// Least-squares estimator for the 81-setting design, built once.
struct LinearInversion {
    settings: Vec<MeasurementSetting>,
    /// `(AᵀA)⁻¹Aᵀ`, mapping stacked frequencies to Pauli coefficients.
    estimator: DMatrix<f64>,
    /// Pauli strings, index `Σ p_k 4^{3−k}` with `I, X, Y, Z = 0..4`.
    paulis: Vec<DMatrix<C64>>,
}

/// `Tr(σ |e⟩⟨e|)` for single-qubit Pauli `pauli` and eigenstate `bit` of `basis`.
fn single_qubit_weight(basis: Basis, bit: usize, pauli: usize) -> f64 {
    let sign = if bit == 0 { 1.0 } else { -1.0 };
    match (pauli, basis) {
        (0, _) => 1.0,
        (1, Basis::X) | (2, Basis::Y) | (3, Basis::Z) => sign,
        _ => 0.0,
    }
}

fn pauli_digits(index: usize) -> [usize; N_QUBITS] {
    let mut d = [0; N_QUBITS];
    for (k, slot) in d.iter_mut().enumerate() {
        *slot = (index >> (2 * (N_QUBITS - 1 - k))) & 3;
    }
    d
}

impl LinearInversion {
    fn build() -> Self {
        let settings = generate_settings();
        let rows = settings.len() * N_OUTCOMES;
        // ρ = (1/16) Σ_P c_P P  ⇒  Tr(ρΠ) = (1/16) Σ_P c_P Tr(PΠ)
        let design = DMatrix::from_fn(rows, N_PAULI, |r, col| {
            let s = &settings[r / N_OUTCOMES];
            let o = r % N_OUTCOMES;
            let digits = pauli_digits(col);
            let mut w = 1.0 / DIM as f64;
            for (k, (&basis, &digit)) in s.bases.iter().zip(&digits).enumerate() {
                let bit = (o >> (N_QUBITS - 1 - k)) & 1;
                w *= single_qubit_weight(basis, bit, digit);
            }
            w
        });
        let gram = design.transpose() * &design;
        let estimator = gram
            .cholesky()
            .expect("local Pauli design is informationally complete")
            .solve(&design.transpose());

        let single = [
            Operator::identity(2),
            Operator::pauli_x(),
            Operator::pauli_y(),
            Operator::pauli_z(),
        ];
        let paulis = (0..N_PAULI)
            .map(|idx| {
                pauli_digits(idx)
                    .iter()
                    .map(|&d| single[d].clone())
                    .reduce(|acc, op| acc.kron(&op))
                    .expect("four factors")
                    .matrix()
                    .clone()
            })
            .collect();
        Self {
            settings,
            estimator,
            paulis,
        }
    }

    fn get() -> &'static LinearInversion {
        static CELL: OnceLock<LinearInversion> = OnceLock::new();
        CELL.get_or_init(LinearInversion::build)
    }

    fn invert(&self, freqs: &[[f64; N_OUTCOMES]]) -> DMatrix<C64> {
        let stacked = DVector::from_iterator(
            freqs.len() * N_OUTCOMES,
            freqs.iter().flat_map(|f| f.iter().copied()),
        );
        let coeffs = &self.estimator * stacked;
        let mut rho = DMatrix::<C64>::zeros(DIM, DIM);
        for (c, p) in coeffs.iter().zip(&self.paulis) {
            if *c != 0.0 {
                rho += p * cr(*c / DIM as f64);
            }
        }
        rho
    }
}

/// Euclidean projection of `v` onto the probability simplex.
pub fn simplex_projection(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut shift = 0.0;
    for (j, x) in u.iter().enumerate() {
        cumulative += x;
        let t = (cumulative - 1.0) / (j + 1) as f64;
        if x - t > 0.0 {
            shift = t;
        }
    }
    v.iter().map(|x| (x - shift).max(0.0)).collect()
}

/// Nearest (Frobenius) unit-trace positive semidefinite matrix to the
/// Hermitian part of `m`.
pub fn nearest_physical(n_qubits: usize, m: &DMatrix<C64>) -> Result<DensityMatrix> {
    let herm = (m + m.adjoint()) * cr(0.5);
    let eig = herm.symmetric_eigen();
    let lambdas: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let projected = simplex_projection(&lambdas);
    let v = &eig.eigenvectors;
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        projected.len(),
        projected.iter().map(|&x| cr(x)),
    ));
    let rho = v * d * v.adjoint();
    let rho = (&rho + rho.adjoint()) * cr(0.5);
    DensityMatrix::new(n_qubits, rho)
}

/// Output of [`reconstruct`].
#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// Linear-inversion estimate; Hermitian with unit trace but possibly not PSD.
    pub raw: DensityMatrix,
    /// Nearest physical state.
    pub state: DensityMatrix,
}

impl Reconstruction {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.state.eigenvalues()
    }
}

/// Reconstructs from outcome frequencies given in [`generate_settings`] order.
pub fn reconstruct_probabilities(freqs: &[[f64; N_OUTCOMES]]) -> Result<Reconstruction> {
    let inv = LinearInversion::get();
    if freqs.len() != inv.settings.len() {
        return Err(Error::DimensionMismatch {
            expected: inv.settings.len(),
            got: freqs.len(),
        });
    }
    let raw = inv.invert(freqs);
    let state = nearest_physical(N_QUBITS, &raw)?;
    Ok(Reconstruction {
        raw: DensityMatrix::unchecked(N_QUBITS, raw)?,
        state,
    })
}

/// Normalizes each setting's counts to frequencies and reconstructs.
pub fn reconstruct(counts: &CountsFile) -> Result<Reconstruction> {
    let inv = LinearInversion::get();
    let mut by_label: HashMap<String, &[u64; 16]> = HashMap::new();
    for rec in &counts.settings {
        let label: MeasurementSetting = rec.bases.parse()?;
        if by_label.insert(label.label(), &rec.counts).is_some() {
            return Err(Error::InvalidArgument(format!(
                "setting {} appears more than once",
                rec.bases
            )));
        }
    }
    let freqs = inv
        .settings
        .iter()
        .map(|s| {
            let label = s.label();
            let c = by_label
                .get(&label)
                .ok_or_else(|| Error::MissingSetting(label.clone()))?;
            let total: u64 = c.iter().sum();
            if total == 0 {
                return Err(Error::EmptySetting(label));
            }
            let mut f = [0.0; N_OUTCOMES];
            for (slot, &n) in f.iter_mut().zip(c.iter()) {
                *slot = n as f64 / total as f64;
            }
            Ok(f)
        })
        .collect::<Result<Vec<_>>>()?;
    reconstruct_probabilities(&freqs)
}

use nalgebra::{DMatrix, DVector};

use super::state::StateVector;
use super::{cr, ACCUMULATED_TOL, C64, MAX_QUBITS};
use crate::error::{Error, Result};

/// Density matrix over `n` qubits.
///
/// [`DensityMatrix::new`] validates physicality (Hermitian, unit trace, PSD
/// within `1e-10`). [`DensityMatrix::unchecked`] skips that for raw estimates,
/// which report `is_physical() == false` when they violate it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, matrix: DMatrix<C64>) -> Result<Self> {
        let rho = Self::unchecked(n_qubits, matrix)?;
        rho.validate(ACCUMULATED_TOL)?;
        Ok(rho)
    }

    /// Builds a density matrix without checking physicality (shape is still checked).
    pub fn unchecked(n_qubits: usize, matrix: DMatrix<C64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn from_pure(psi: &StateVector) -> Self {
        let v = DVector::from_column_slice(psi.amplitudes());
        Self {
            n_qubits: psi.n_qubits(),
            matrix: &v * v.adjoint(),
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        Ok(Self {
            n_qubits,
            matrix: DMatrix::identity(dim, dim) * cr(1.0 / dim as f64),
        })
    }

    /// Convex combination `p·a + (1−p)·b`.
    pub fn mixture(p: f64, a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "mixing weight {p} outside [0, 1]"
            )));
        }
        if a.n_qubits != b.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: b.dim(),
            });
        }
        Ok(Self {
            n_qubits: a.n_qubits,
            matrix: &a.matrix * cr(p) + &b.matrix * cr(1.0 - p),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Largest entrywise modulus of `ρ − ρ†`.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.matrix + self.matrix.adjoint()) * cr(0.5);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    fn validate(&self, tol: f64) -> Result<()> {
        let h = self.hermiticity_defect();
        if h > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (defect {h:e})"
            )));
        }
        let tr = self.trace();
        if (tr - cr(1.0)).norm() > tol {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let min = self.eigenvalues()[0];
        if min < -tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub fn is_physical(&self, tol: f64) -> bool {
        self.validate(tol).is_ok()
    }

    /// `Tr(ρ·op)`.
    pub fn expectation(&self, op: &DMatrix<C64>) -> C64 {
        (&self.matrix * op).trace()
    }

    /// Frobenius norm of `self − other`.
    pub fn frobenius_distance(&self, other: &DensityMatrix) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }
}

/// `⟨ψ|ρ|ψ⟩` for a Hermitian `ρ`.
pub fn fidelity_pure(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: psi.dim(),
        });
    }
    let v = DVector::from_column_slice(psi.amplitudes());
    let f = (v.adjoint() * &rho.matrix * &v)[(0, 0)];
    if f.im.abs() > ACCUMULATED_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "⟨ψ|ρ|ψ⟩ has imaginary part {:e}",
            f.im
        )));
    }
    Ok(f.re)
}

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::DMatrix;

use super::{c, cr, C64};
#[cfg(test)]
use super::EXACT_TOL;
use crate::error::{Error, Result};

/// A 2×2 or 4×4 complex matrix acting on one or two qubits.
#[derive(Clone, PartialEq)]
pub struct Operator {
    matrix: DMatrix<C64>,
    label: Option<String>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator")
            .field("label", &self.label)
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl Operator {
    /// Builds an operator from row-major entries. `dim` must be a power of two.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "operator dimension {dim} is not a power of two"
            )));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self {
            matrix: DMatrix::from_row_slice(dim, dim, entries),
            label: None,
        })
    }

    pub fn from_matrix(matrix: DMatrix<C64>) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "operator must be square with power-of-two size, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self {
            matrix,
            label: None,
        })
    }

    fn labelled(dim: usize, entries: &[C64], label: &str) -> Self {
        Self {
            matrix: DMatrix::from_row_slice(dim, dim, entries),
            label: Some(label.to_string()),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
            label: Some("I".into()),
        }
    }

    pub fn hadamard() -> Self {
        let h = cr(FRAC_1_SQRT_2);
        Self::labelled(2, &[h, h, h, -h], "H")
    }

    /// Controlled phase, `diag(1, 1, 1, −1)`.
    pub fn cphase() -> Self {
        let mut m = DMatrix::identity(4, 4);
        m[(3, 3)] = cr(-1.0);
        Self {
            matrix: m,
            label: Some("CP".into()),
        }
    }

    pub fn pauli_x() -> Self {
        Self::labelled(2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)], "X")
    }

    pub fn pauli_y() -> Self {
        Self::labelled(2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)], "Y")
    }

    pub fn pauli_z() -> Self {
        Self::labelled(2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)], "Z")
    }

    /// `R_z(α) = exp(iασ_z/2) = diag(e^{iα/2}, e^{−iα/2})`.
    pub fn rz(alpha: f64) -> Self {
        let z = cr(0.0);
        Self::labelled(
            2,
            &[
                C64::from_polar(1.0, alpha / 2.0),
                z,
                z,
                C64::from_polar(1.0, -alpha / 2.0),
            ],
            "Rz",
        )
    }

    /// `R_x(α) = exp(iασ_x/2)`, equal to `H·R_z(α)·H`.
    pub fn rx(alpha: f64) -> Self {
        let (s, co) = (alpha / 2.0).sin_cos();
        Self::labelled(2, &[cr(co), c(0.0, s), c(0.0, s), cr(co)], "Rx")
    }

    /// Single-qubit correction rotation used on the cluster output qubits:
    ///
    /// ```text
    /// ⎡ e^{i(α−γ)} cos(β/2)   −e^{i(α+γ)} sin(β/2) ⎤
    /// ⎣ e^{i(α−γ)} sin(β/2)    e^{i(α+γ)} cos(β/2) ⎦
    /// ```
    ///
    /// `R(0,0,0) = I` and `R(0,π,0) = −iσ_y`.
    pub fn euler(alpha: f64, beta: f64, gamma: f64) -> Self {
        let (s, co) = (beta / 2.0).sin_cos();
        let left = C64::from_polar(1.0, alpha - gamma);
        let right = C64::from_polar(1.0, alpha + gamma);
        Self::labelled(
            2,
            &[left * co, -right * s, left * s, right * co],
            "R",
        )
    }

    /// Strategy unitary
    ///
    /// ```text
    /// U(θ, φ) = ⎡ e^{−iφ} cos(θ/2)   −sin(θ/2)       ⎤
    ///           ⎣ sin(θ/2)            e^{iφ} cos(θ/2) ⎦
    /// ```
    pub fn strategy(theta: f64, phi: f64) -> Self {
        let (s, co) = (theta / 2.0).sin_cos();
        Self::labelled(
            2,
            &[
                C64::from_polar(co, -phi),
                cr(-s),
                cr(s),
                C64::from_polar(co, phi),
            ],
            "U",
        )
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Operator) -> Result<Operator> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rhs.dim(),
            });
        }
        Ok(Operator {
            matrix: &self.matrix * &rhs.matrix,
            label: None,
        })
    }

    /// Tensor product `self ⊗ rhs`; `self` acts on the more significant qubits.
    pub fn kron(&self, rhs: &Operator) -> Operator {
        Operator {
            matrix: self.matrix.kronecker(&rhs.matrix),
            label: None,
        }
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            matrix: self.matrix.adjoint(),
            label: self.label.as_ref().map(|l| format!("{l}†")),
        }
    }

    pub fn scale(&self, factor: C64) -> Operator {
        Operator {
            matrix: &self.matrix * factor,
            label: None,
        }
    }

    /// Largest entrywise modulus of `O·O† − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = &self.matrix * self.matrix.adjoint();
        let id = DMatrix::<C64>::identity(self.dim(), self.dim());
        (prod - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Entrywise comparison within `tol`.
    pub fn approx_eq(&self, other: &Operator, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .matrix
                .iter()
                .zip(other.matrix.iter())
                .all(|(a, b)| (a - b).norm() <= tol)
    }
}

/// Builds a named gate. Accepted labels (case-insensitive): `H`, `CP`, `X`,
/// `Y`, `Z`, `Rz(α)`, `Rx(α)`, `R(α,β,γ)`, `U(θ,φ)`, `I`.
pub fn gate(label: &str, params: &[f64]) -> Result<Operator> {
    let want = |n: usize| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::GateParameters {
                gate: label.to_string(),
                expected: n,
                got: params.len(),
            })
        }
    };
    match label.to_ascii_uppercase().as_str() {
        "I" => want(0).map(|_| Operator::identity(2)),
        "H" => want(0).map(|_| Operator::hadamard()),
        "CP" | "CZ" => want(0).map(|_| Operator::cphase()),
        "X" => want(0).map(|_| Operator::pauli_x()),
        "Y" => want(0).map(|_| Operator::pauli_y()),
        "Z" => want(0).map(|_| Operator::pauli_z()),
        "RZ" => want(1).map(|_| Operator::rz(params[0])),
        "RX" => want(1).map(|_| Operator::rx(params[0])),
        "R" => want(3).map(|_| Operator::euler(params[0], params[1], params[2])),
        "U" => want(2).map(|_| Operator::strategy(params[0], params[1])),
        _ => Err(Error::UnknownGate(label.to_string())),
    }
}

impl Default for Operator {
    fn default() -> Self {
        Operator::identity(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn is_close(a: C64, b: C64) -> bool {
        (a - b).norm() <= EXACT_TOL
    }

    #[test]
    fn cphase_flips_only_11() {
        let cp = Operator::cphase();
        for i in 0..4 {
            let expect = if i == 3 { -1.0 } else { 1.0 };
            assert!(is_close(cp.entry(i, i), cr(expect)));
        }
    }

    #[test]
    fn strategy_corners() {
        assert!(Operator::strategy(0.0, 0.0).approx_eq(&Operator::identity(2), EXACT_TOL));
        let d = Operator::from_rows(2, &[cr(0.0), cr(-1.0), cr(1.0), cr(0.0)]).unwrap();
        assert!(Operator::strategy(PI, 0.0).approx_eq(&d, EXACT_TOL));
    }

    #[test]
    fn euler_zero_pi_zero_is_minus_i_sigma_y() {
        let minus_i_y = Operator::pauli_y().scale(c(0.0, -1.0));
        assert!(Operator::euler(0.0, PI, 0.0).approx_eq(&minus_i_y, EXACT_TOL));
        assert!(Operator::euler(0.0, 0.0, 0.0).approx_eq(&Operator::identity(2), EXACT_TOL));
    }

    #[test]
    fn rx_is_h_rz_h() {
        for k in 0..20 {
            let a = -3.0 + 0.37 * k as f64;
            let h = Operator::hadamard();
            let hzh = h.compose(&Operator::rz(a)).unwrap().compose(&h).unwrap();
            assert!(Operator::rx(a).approx_eq(&hzh, EXACT_TOL));
        }
    }

    #[test]
    fn gate_lookup() {
        assert_eq!(gate("cp", &[]).unwrap().dim(), 4);
        assert_eq!(gate("Rz", &[0.3]).unwrap().label(), Some("Rz"));
        assert!(matches!(gate("T", &[]), Err(Error::UnknownGate(_))));
        assert!(matches!(
            gate("U", &[1.0]),
            Err(Error::GateParameters { expected: 2, got: 1, .. })
        ));
    }

    #[test]
    fn compose_checks_dims() {
        assert!(Operator::hadamard().compose(&Operator::cphase()).is_err());
    }
}

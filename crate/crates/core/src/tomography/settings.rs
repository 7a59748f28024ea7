use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qcore::{c, cr, DensityMatrix, C64};

pub const N_QUBITS: usize = 4;
const DIM: usize = 1 << N_QUBITS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Z,
    X,
    Y,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::Z, Basis::X, Basis::Y];

    /// Eigenstates `[+1, −1]`.
    pub fn eigenstates(self) -> [[C64; 2]; 2] {
        let r = FRAC_1_SQRT_2;
        match self {
            Basis::Z => [[cr(1.0), cr(0.0)], [cr(0.0), cr(1.0)]],
            Basis::X => [[cr(r), cr(r)], [cr(r), cr(-r)]],
            Basis::Y => [[cr(r), c(0.0, r)], [cr(r), c(0.0, -r)]],
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Basis::Z => 'Z',
            Basis::X => 'X',
            Basis::Y => 'Y',
        }
    }
}

/// A local Pauli basis for each of the four qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeasurementSetting {
    pub bases: [Basis; N_QUBITS],
}

impl MeasurementSetting {
    pub fn label(&self) -> String {
        self.bases.iter().map(|b| b.symbol()).collect()
    }

    /// Ket for `outcome` (bit k, counted from the most significant, is qubit
    /// k+1; 0 is the +1 eigenstate).
    pub fn outcome_ket(&self, outcome: usize) -> Vec<C64> {
        let mut ket = vec![cr(1.0)];
        for (k, basis) in self.bases.iter().enumerate() {
            let bit = (outcome >> (N_QUBITS - 1 - k)) & 1;
            let e = basis.eigenstates()[bit];
            ket = ket.iter().flat_map(|a| e.iter().map(move |b| a * b)).collect();
        }
        ket
    }

    /// `|outcome⟩⟨outcome|` in the computational basis.
    pub fn projector(&self, outcome: usize) -> DMatrix<C64> {
        let v = nalgebra::DVector::from_vec(self.outcome_ket(outcome));
        &v * v.adjoint()
    }

    pub fn projectors(&self) -> Vec<DMatrix<C64>> {
        (0..DIM).map(|o| self.projector(o)).collect()
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for MeasurementSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("invalid measurement setting '{s}'"));
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != N_QUBITS {
            return Err(bad());
        }
        let mut bases = [Basis::Z; N_QUBITS];
        for (b, ch) in bases.iter_mut().zip(chars) {
            *b = match ch.to_ascii_uppercase() {
                'Z' => Basis::Z,
                'X' => Basis::X,
                'Y' => Basis::Y,
                _ => return Err(bad()),
            };
        }
        Ok(Self { bases })
    }
}

/// All `3⁴ = 81` settings, lexicographic in Z < X < Y with qubit 1 slowest.
pub fn generate_settings() -> Vec<MeasurementSetting> {
    (0..81)
        .map(|mut k| {
            let mut bases = [Basis::Z; N_QUBITS];
            for slot in bases.iter_mut().rev() {
                *slot = Basis::ALL[k % 3];
                k /= 3;
            }
            MeasurementSetting { bases }
        })
        .collect()
}

/// `Tr(ρ Π)` for all 16 outcomes of every setting.
pub fn exact_probabilities(
    rho: &DensityMatrix,
    settings: &[MeasurementSetting],
) -> Result<Vec<[f64; 16]>> {
    if rho.n_qubits() != N_QUBITS {
        return Err(Error::DimensionMismatch {
            expected: DIM,
            got: rho.dim(),
        });
    }
    Ok(settings
        .iter()
        .map(|s| {
            let mut p = [0.0; 16];
            for (o, slot) in p.iter_mut().enumerate() {
                *slot = rho.expectation(&s.projector(o)).re.max(0.0);
            }
            p
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{StateVector, EXACT_TOL};

    #[test]
    fn eighty_one_settings() {
        let s = generate_settings();
        assert_eq!(s.len(), 81);
        assert_eq!(s[0].label(), "ZZZZ");
        assert_eq!(s[80].label(), "YYYY");
        let unique: std::collections::HashSet<_> = s.iter().collect();
        assert_eq!(unique.len(), 81);
        assert_eq!(s.iter().map(|x| x.projectors().len()).sum::<usize>(), 1296);
    }

    #[test]
    fn zzzz_is_computational() {
        let s: MeasurementSetting = "ZZZZ".parse().unwrap();
        for o in 0..16 {
            let ket = s.outcome_ket(o);
            for (i, a) in ket.iter().enumerate() {
                let want = if i == o { 1.0 } else { 0.0 };
                assert!((a - cr(want)).norm() < EXACT_TOL);
            }
        }
    }

    #[test]
    fn projectors_complete_and_orthogonal() {
        let id = DMatrix::<C64>::identity(DIM, DIM);
        for s in generate_settings() {
            let ps = s.projectors();
            let sum = ps.iter().fold(DMatrix::zeros(DIM, DIM), |acc, p| acc + p);
            assert!((sum - &id).norm() < EXACT_TOL, "{s}");
            for i in 0..DIM {
                for j in 0..DIM {
                    let tr = (&ps[i] * &ps[j]).trace();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((tr - cr(want)).norm() < EXACT_TOL);
                }
            }
        }
    }

    #[test]
    fn parse_labels() {
        assert_eq!("zxyz".parse::<MeasurementSetting>().unwrap().label(), "ZXYZ");
        assert!("ZXY".parse::<MeasurementSetting>().is_err());
        assert!("ZXYA".parse::<MeasurementSetting>().is_err());
    }

    #[test]
    fn probabilities_of_basis_state() {
        let rho = DensityMatrix::from_pure(&StateVector::basis(4, 0b0101).unwrap());
        let p = exact_probabilities(&rho, &["ZZZZ".parse().unwrap()]).unwrap();
        assert!((p[0][0b0101] - 1.0).abs() < EXACT_TOL);
    }
}

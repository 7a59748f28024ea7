use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::qcore::{cr, DensityMatrix, StateVector, C64};

/// Number of phase samples averaged by [`NoiseModel::Dephased`].
pub const DEPHASING_DRAWS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    None,
    /// `p|ψ⟩⟨ψ| + (1−p)·I/2ⁿ`.
    Werner(f64),
    /// Gaussian relative phase (standard deviation in radians) between the
    /// qubit-1 = 0 and qubit-1 = 1 branches.
    Dephased(f64),
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseModel::None => write!(f, "none"),
            NoiseModel::Werner(p) => write!(f, "werner:{p}"),
            NoiseModel::Dephased(s) => write!(f, "dephased:{s}"),
        }
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidArgument(format!(
                "invalid noise '{s}': expected none, werner:<p> or dephased:<sigma>"
            ))
        };
        let value = |v: &str| v.trim().parse::<f64>().map_err(|_| bad());
        let model = match s.trim().split_once(':') {
            None if s.trim().eq_ignore_ascii_case("none") => NoiseModel::None,
            Some((k, v)) if k.eq_ignore_ascii_case("werner") => NoiseModel::Werner(value(v)?),
            Some((k, v)) if k.eq_ignore_ascii_case("dephased") => {
                NoiseModel::Dephased(value(v)?)
            }
            _ => return Err(bad()),
        };
        match model {
            NoiseModel::Werner(p) if !(0.0..=1.0).contains(&p) => Err(bad()),
            NoiseModel::Dephased(sigma) if !(sigma >= 0.0 && sigma.is_finite()) => Err(bad()),
            m => Ok(m),
        }
    }
}

/// Applies `kind` to the pure state `base`. `seed` drives the dephasing draws.
pub fn noise_state(kind: NoiseModel, base: &StateVector, seed: u64) -> Result<DensityMatrix> {
    let pure = DensityMatrix::from_pure(base);
    match kind {
        NoiseModel::None => Ok(pure),
        NoiseModel::Werner(p) => {
            DensityMatrix::mixture(p, &pure, &DensityMatrix::maximally_mixed(base.n_qubits())?)
        }
        NoiseModel::Dephased(sigma) => {
            if sigma < 0.0 || !sigma.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "dephasing width {sigma} must be finite and non-negative"
                )));
            }
            if sigma == 0.0 {
                return Ok(pure);
            }
            let normal = Normal::new(0.0, sigma)
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dim = base.dim();
            let upper = dim / 2;
            let mut acc = DMatrix::<C64>::zeros(dim, dim);
            for _ in 0..DEPHASING_DRAWS {
                let phase = C64::from_polar(1.0, normal.sample(&mut rng));
                let v = nalgebra::DVector::from_iterator(
                    dim,
                    base.amplitudes()
                        .iter()
                        .enumerate()
                        .map(|(i, a)| if i >= upper { a * phase } else { *a }),
                );
                acc += &v * v.adjoint();
            }
            DensityMatrix::new(base.n_qubits(), acc * cr(1.0 / DEPHASING_DRAWS as f64))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{build_cluster, Construction};
    use crate::qcore::fidelity_pure;

    fn phi_c() -> StateVector {
        build_cluster(Construction::Direct).unwrap().state().clone()
    }

    #[test]
    fn werner_fidelities() {
        let psi = phi_c();
        let rho = noise_state(NoiseModel::Werner(1.0), &psi, 0).unwrap();
        assert!((fidelity_pure(&rho, &psi).unwrap() - 1.0).abs() < 1e-12);
        let rho = noise_state(NoiseModel::Werner(0.5947), &psi, 0).unwrap();
        assert!((fidelity_pure(&rho, &psi).unwrap() - 0.62).abs() < 1e-3);
    }

    #[test]
    fn dephasing() {
        let psi = phi_c();
        let rho = noise_state(NoiseModel::Dephased(0.0), &psi, 7).unwrap();
        assert!((fidelity_pure(&rho, &psi).unwrap() - 1.0).abs() < 1e-12);
        // Average coherence is e^{-σ²/2}; F = ½ + ½·Re⟨e^{iδ}⟩.
        let sigma: f64 = 0.8;
        let rho = noise_state(NoiseModel::Dephased(sigma), &psi, 7).unwrap();
        let f = fidelity_pure(&rho, &psi).unwrap();
        let expect = 0.5 + 0.5 * (-sigma * sigma / 2.0).exp();
        assert!((f - expect).abs() < 0.05, "{f} vs {expect}");
        assert!(rho.is_physical(1e-10));
    }

    #[test]
    fn parse() {
        assert_eq!("none".parse::<NoiseModel>().unwrap(), NoiseModel::None);
        assert_eq!(
            "werner:0.3".parse::<NoiseModel>().unwrap(),
            NoiseModel::Werner(0.3)
        );
        assert_eq!(
            "dephased:0.2".parse::<NoiseModel>().unwrap(),
            NoiseModel::Dephased(0.2)
        );
        for bad in ["werner", "werner:1.5", "dephased:-1", "white:0.1", "werner:x"] {
            assert!(bad.parse::<NoiseModel>().is_err(), "{bad}");
        }
    }
}

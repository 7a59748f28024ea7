use std::fmt;

use super::operator::Operator;
use super::{cr, ACCUMULATED_TOL, C64, MAX_QUBITS};
use crate::error::{Error, Result};

/// Below this, a projection is treated as landing on an orthogonal outcome.
const MIN_PROJECTION_PROBABILITY: f64 = 1e-14;

/// Normalized pure state of `n` qubits.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
    /// Norm of the amplitudes this state was built from.
    normalization: f64,
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector[{}]{{", self.n_qubits)?;
        let mut first = true;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm() > 1e-12 {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "|{:0w$b}⟩: {:.6}", i, a, w = self.n_qubits)?;
            }
        }
        write!(f, "}}")
    }
}

impl StateVector {
    /// Normalizes `amplitudes` into a state and records the norm divided out.
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let expected = 1usize << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self {
            n_qubits,
            amplitudes,
            normalization: norm,
        })
    }

    /// Real-amplitude convenience constructor.
    pub fn from_real(n_qubits: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(n_qubits, amplitudes.iter().map(|&a| cr(a)).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![cr(0.0); dim];
        amps[index] = cr(1.0);
        Self::new(n_qubits, amps)
    }

    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    /// Norm of the input that was divided out on construction.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn shift(&self, qubit: usize) -> usize {
        self.n_qubits - qubit
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit == 0 || qubit > self.n_qubits {
            Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }

    /// Applies `op` to `targets` (1-based), identity elsewhere. The first target
    /// is the most significant qubit of the operator's index.
    pub fn apply(&self, op: &Operator, targets: &[usize]) -> Result<StateVector> {
        for (i, &t) in targets.iter().enumerate() {
            self.check_qubit(t)?;
            if targets[..i].contains(&t) {
                return Err(Error::DuplicateTarget(t));
            }
        }
        let k = targets.len();
        if op.dim() != 1 << k {
            return Err(Error::OperatorSize {
                dim: op.dim(),
                targets: k,
            });
        }

        let masks: Vec<usize> = targets.iter().map(|&t| 1 << self.shift(t)).collect();
        let target_mask: usize = masks.iter().sum();
        let sub = 1usize << k;
        let offsets: Vec<usize> = (0..sub)
            .map(|m| {
                (0..k)
                    .filter(|j| (m >> (k - 1 - j)) & 1 == 1)
                    .map(|j| masks[j])
                    .sum()
            })
            .collect();

        let m = op.matrix();
        let mut out = vec![cr(0.0); self.dim()];
        let mut gathered = vec![cr(0.0); sub];
        for base in (0..self.dim()).filter(|b| b & target_mask == 0) {
            for (g, off) in gathered.iter_mut().zip(&offsets) {
                *g = self.amplitudes[base | off];
            }
            for (row, off) in offsets.iter().enumerate() {
                out[base | off] = (0..sub).map(|col| m[(row, col)] * gathered[col]).sum();
            }
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes: out,
            normalization: 1.0,
        })
    }

    /// Projects `qubit` onto `ket`, returning `⟨ket|ψ⟩` on the remaining qubits
    /// (order preserved, renormalized) and the outcome probability.
    pub fn project_qubit(&self, qubit: usize, ket: [C64; 2]) -> Result<(StateVector, f64)> {
        self.check_qubit(qubit)?;
        let ket_norm = ket[0].norm_sqr() + ket[1].norm_sqr();
        if (ket_norm - 1.0).abs() > ACCUMULATED_TOL {
            return Err(Error::KetNotNormalized(ket_norm));
        }
        if self.n_qubits == 1 {
            return Err(Error::InvalidArgument(
                "cannot project the only qubit of a register".into(),
            ));
        }
        let shift = self.shift(qubit);
        let low_mask = (1usize << shift) - 1;
        let bra = [ket[0].conj(), ket[1].conj()];
        let reduced: Vec<C64> = (0..self.dim() / 2)
            .map(|r| {
                let high = (r & !low_mask) << 1;
                let low = r & low_mask;
                let i0 = high | low;
                let i1 = i0 | (1 << shift);
                bra[0] * self.amplitudes[i0] + bra[1] * self.amplitudes[i1]
            })
            .collect();
        let p: f64 = reduced.iter().map(|a| a.norm_sqr()).sum();
        if p < MIN_PROJECTION_PROBABILITY {
            return Err(Error::OrthogonalOutcome(p));
        }
        let state = StateVector::new(self.n_qubits - 1, reduced)?;
        Ok((state, p))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`; 1 means equal up to a global phase.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    pub fn equals_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        matches!(self.overlap(other), Ok(o) if (o - 1.0).abs() <= tol)
    }

    /// `self ⊗ other` with `self` on the more significant qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        StateVector::new(self.n_qubits + other.n_qubits, amps)
    }

    /// Exchanges two qubits (a relabeling).
    pub fn swap_qubits(&self, a: usize, b: usize) -> Result<StateVector> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        let (sa, sb) = (self.shift(a), self.shift(b));
        let amps = (0..self.dim())
            .map(|i| {
                let ba = (i >> sa) & 1;
                let bb = (i >> sb) & 1;
                let j = if ba == bb {
                    i
                } else {
                    i ^ (1 << sa) ^ (1 << sb)
                };
                self.amplitudes[j]
            })
            .collect();
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes: amps,
            normalization: 1.0,
        })
    }

    /// `|amplitude|²` per basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Outcome distribution over bitstrings (`bitstring, probability`), in basis order.
/// Bitstrings read qubit 1 first.
pub fn bitstring_distribution(state: &StateVector) -> Vec<(String, f64)> {
    let n = state.n_qubits();
    state
        .probabilities()
        .into_iter()
        .enumerate()
        .map(|(i, p)| (format!("{:0n$b}", i), p))
        .collect()
}

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::register::QubitRegister;
use crate::error::{argument, Result};
use crate::tolerances::NORM_TOL;

/// Normalized state vector over a labelled register.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    register: QubitRegister,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps `amplitudes`, requiring unit norm within [`NORM_TOL`].
    pub fn new(register: QubitRegister, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_length(&register, &amplitudes)?;
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(argument(format!("state norm {norm} differs from 1")));
        }
        Ok(Self { register, amplitudes })
    }

    /// Wraps `amplitudes` after rescaling to unit norm.
    pub fn normalized(register: QubitRegister, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_length(&register, &amplitudes)?;
        let norm = norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(argument("cannot normalize a zero or non-finite vector"));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { register, amplitudes })
    }

    /// Builds a state from `(basis index, amplitude)` pairs.
    pub fn from_terms(register: QubitRegister, terms: &[(usize, Complex64)]) -> Result<Self> {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); register.dim()];
        for &(index, amp) in terms {
            let slot =
                amplitudes.get_mut(index).ok_or_else(|| argument(format!("basis index {index} out of range")))?;
            *slot += amp;
        }
        Self::new(register, amplitudes)
    }

    /// Tensor product, with `self` on the leading positions.
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let register = QubitRegister::new(self.register.labels().iter().chain(other.register.labels()).cloned())?;
        let amplitudes = self.amplitudes.iter().flat_map(|a| other.amplitudes.iter().map(move |b| a * b)).collect();
        Ok(Self { register, amplitudes })
    }

    pub fn register(&self) -> &QubitRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// Amplitude of the basis ket written as a bit string in register order, e.g. `"1010"`.
    pub fn amplitude(&self, bits: &str) -> Result<Complex64> {
        if bits.len() != self.register.size() {
            return Err(argument(format!("bit string `{bits}` has the wrong length")));
        }
        let index = usize::from_str_radix(bits, 2).map_err(|_| argument(format!("`{bits}` is not a bit string")))?;
        Ok(self.amplitudes[index])
    }

    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.amplitudes)
    }

    /// Reduced density operator on `keep`, ordered as given.
    pub fn reduced_density<S: AsRef<str>>(&self, keep: &[S]) -> Result<ComplexMatrix> {
        if keep.is_empty() {
            return Err(argument("cannot keep an empty set of qubits"));
        }
        let positions = self.register.positions(keep)?;
        Ok(reduce_amplitudes(&self.amplitudes, self.register.size(), &positions))
    }

    /// Global overlap `|⟨self|other⟩|` for states on equal registers.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm()
    }
}

fn check_length(register: &QubitRegister, amplitudes: &[Complex64]) -> Result<()> {
    if amplitudes.len() != register.dim() {
        return Err(argument(format!("{} amplitudes for a {}-qubit register", amplitudes.len(), register.size())));
    }
    if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(argument("amplitudes must be finite"));
    }
    Ok(())
}

fn norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Offsets of each sub-index of `positions` inside a full `n`-qubit index.
/// `positions[0]` is the most significant bit of the sub-index.
fn index_offsets(n: usize, positions: &[usize]) -> Vec<usize> {
    let k = positions.len();
    (0..1usize << k)
        .map(|sub| {
            positions.iter().enumerate().fold(0, |acc, (slot, &p)| {
                if sub & (1 << (k - 1 - slot)) != 0 {
                    acc | (1 << (n - 1 - p))
                } else {
                    acc
                }
            })
        })
        .collect()
}

/// Reduced density of an unnormalized amplitude vector on `keep` (positions).
/// The trace of the result is the squared norm of the input.
pub fn reduce_amplitudes(amplitudes: &[Complex64], n: usize, keep: &[usize]) -> ComplexMatrix {
    let traced: Vec<usize> = (0..n).filter(|p| !keep.contains(p)).collect();
    let kept_off = index_offsets(n, keep);
    let traced_off = index_offsets(n, &traced);
    let dim = kept_off.len();
    let mut out = ComplexMatrix::zeros(dim);
    let mut slice = vec![Complex64::new(0.0, 0.0); dim];
    for t in &traced_off {
        for (s, k) in slice.iter_mut().zip(&kept_off) {
            *s = amplitudes[k | t];
        }
        for i in 0..dim {
            if slice[i] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                out[(i, j)] += slice[i] * slice[j].conj();
            }
        }
    }
    out
}

/// Partial trace of a register-backed operator, keeping `keep` in the given order.
pub fn partial_trace<S: AsRef<str>>(
    rho: &ComplexMatrix,
    register: &QubitRegister,
    keep: &[S],
) -> Result<ComplexMatrix> {
    if rho.dim() != register.dim() {
        return Err(argument(format!(
            "operator of dimension {} does not match a {}-qubit register",
            rho.dim(),
            register.size()
        )));
    }
    if keep.is_empty() {
        return Err(argument("cannot keep an empty set of qubits"));
    }
    let keep = register.positions(keep)?;
    let n = register.size();
    let traced: Vec<usize> = register.complement(&keep);
    let kept_off = index_offsets(n, &keep);
    let traced_off = index_offsets(n, &traced);
    let dim = kept_off.len();
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(i, j)] = traced_off.iter().map(|t| rho[(kept_off[i] | t, kept_off[j] | t)]).sum();
        }
    }
    Ok(out)
}

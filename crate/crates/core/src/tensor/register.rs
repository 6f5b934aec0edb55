use std::fmt;

use crate::error::{argument, Error, Result};

/// Largest supported register (2^8 = 256 amplitudes).
pub const MAX_QUBITS: usize = 8;

/// Ordered, uniquely labelled qubits.
///
/// Position 0 is the most-significant bit of a computational-basis index:
/// in a register `[c1, r1, c2, r2]` the ket `|1010⟩` has index `0b1010`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QubitRegister {
    labels: Vec<String>,
}

impl QubitRegister {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(argument("a register needs at least one qubit"));
        }
        if labels.len() > MAX_QUBITS {
            return Err(Error::Capacity { dim: 1 << labels.len().min(63), cap: 1 << MAX_QUBITS });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Label(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// The cavity-reservoir register `c1 r1 c2 r2 ...` for `pairs` pairs.
    pub fn cavity_reservoir(pairs: usize) -> Result<Self> {
        Self::new((1..=pairs).flat_map(|k| [format!("c{k}"), format!("r{k}")]))
    }

    /// The register `A1 A1' A2 A2' ...` for `pairs` pairs.
    pub fn primed_pairs(pairs: usize) -> Result<Self> {
        Self::new((1..=pairs).flat_map(|k| [format!("A{k}"), format!("A{k}'")]))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::Label(label.to_owned()))
    }

    /// Positions of `subset`, in the order given. Rejects unknown or repeated labels.
    pub fn positions<S: AsRef<str>>(&self, subset: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(subset.len());
        for s in subset {
            let p = self.position(s.as_ref())?;
            if out.contains(&p) {
                return Err(Error::Label(s.as_ref().to_owned()));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Positions not in `positions`, ascending.
    pub fn complement(&self, positions: &[usize]) -> Vec<usize> {
        (0..self.size()).filter(|p| !positions.contains(p)).collect()
    }

    /// The register restricted to `positions`, in that order.
    pub fn select(&self, positions: &[usize]) -> Self {
        Self { labels: positions.iter().map(|&p| self.labels[p].clone()).collect() }
    }

    /// Bit mask of the qubit at `position` inside a basis index.
    pub fn bit(&self, position: usize) -> usize {
        1 << (self.size() - 1 - position)
    }
}

impl fmt::Debug for QubitRegister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QubitRegister{:?}", self.labels)
    }
}

impl fmt::Display for QubitRegister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels.join(" "))
    }
}

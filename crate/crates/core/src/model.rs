//! Constructors for every state in the cavity-reservoir scenarios.
//!
//! Each cavity `c_k` couples to a reservoir `r_k`, modelled as one effective
//! qubit because the dynamics never leave the zero/one-excitation sector.
//! Under the damping map a cavity photon leaks as
//! `|10⟩ ↦ ξ|10⟩ + χ|01⟩` with `ξ = e^{-κt/2}` and `χ = √(1 - e^{-κt})`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{argument, Result};
use crate::tensor::{PureState, QubitRegister, MAX_QUBITS};
use crate::tolerances::NORM_TOL;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Cavity and reservoir amplitudes after a dimensionless time `κt`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DampingAmplitudes {
    pub xi: f64,
    pub chi: f64,
    pub kappa_t: f64,
}

impl DampingAmplitudes {
    pub fn xi_sq(&self) -> f64 {
        self.xi * self.xi
    }

    pub fn chi_sq(&self) -> f64 {
        self.chi * self.chi
    }
}

pub fn damping_amplitudes(kappa_t: f64) -> Result<DampingAmplitudes> {
    if !kappa_t.is_finite() || kappa_t < 0.0 {
        return Err(argument(format!("kappa_t must be finite and nonnegative, got {kappa_t}")));
    }
    // -expm1(-x) keeps χ accurate for small κt.
    Ok(DampingAmplitudes { xi: (-kappa_t / 2.0).exp(), chi: (-(-kappa_t).exp_m1()).sqrt(), kappa_t })
}

/// `α|00⟩ + β|11⟩` on the cavities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialPairState {
    alpha: Complex64,
    beta: Complex64,
}

impl InitialPairState {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(argument(format!("|α|² + |β|² = {norm}, expected 1")));
        }
        Ok(Self { alpha, beta })
    }

    /// Real `α ∈ [0, 1]` with `β = √(1 - α²)`.
    pub fn from_real(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(argument(format!("real alpha must lie in [0, 1], got {alpha}")));
        }
        Self::new(Complex64::new(alpha, 0.0), Complex64::new((1.0 - alpha * alpha).sqrt(), 0.0))
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn abs_alpha(&self) -> f64 {
        self.alpha.norm()
    }

    pub fn abs_beta(&self) -> f64 {
        self.beta.norm()
    }

    /// `4|αβ|²`, the initial cavity-cavity tangle.
    pub fn initial_tangle(&self) -> f64 {
        let ab = self.abs_alpha() * self.abs_beta();
        4.0 * ab * ab
    }
}

/// Per-pair state `ξ|10⟩ + χ|01⟩` as a length-4 amplitude vector over `(c, r)`.
fn leaked_photon(d: &DampingAmplitudes) -> [Complex64; 4] {
    [ZERO, Complex64::new(d.chi, 0.0), Complex64::new(d.xi, 0.0), ZERO]
}

/// `α|0…0⟩ + β|φ_t⟩^{⊗pairs}` on `c1 r1 c2 r2 …`.
fn evolved_pairs(init: &InitialPairState, kappa_t: f64, pairs: usize) -> Result<PureState> {
    let d = damping_amplitudes(kappa_t)?;
    let register = QubitRegister::cavity_reservoir(pairs)?;
    let phi = leaked_photon(&d);
    let mut amplitudes = vec![ZERO; register.dim()];
    for (index, slot) in amplitudes.iter_mut().enumerate() {
        // Two bits per pair, first pair most significant.
        let mut amp = init.beta;
        for k in 0..pairs {
            let pair_bits = (index >> (2 * (pairs - 1 - k))) & 0b11;
            amp *= phi[pair_bits];
        }
        *slot = amp;
    }
    amplitudes[0] += init.alpha;
    PureState::normalized(register, amplitudes)
}

/// Two cavities with independent reservoirs after time `κt`, over `(c1, r1, c2, r2)`.
pub fn evolved_two_pair_state(init: &InitialPairState, kappa_t: f64) -> Result<PureState> {
    evolved_pairs(init, kappa_t, 2)
}

/// The three-cavity GHZ-type scenario after time `κt`, over `(c1, r1, c2, r2, c3, r3)`.
pub fn evolved_three_pair_state(init: &InitialPairState, kappa_t: f64) -> Result<PureState> {
    evolved_pairs(init, kappa_t, 3)
}

/// Single-excitation superposition `Σ_k a_k |0…1_k…0⟩` over `A1 A1' A2 A2' …`.
pub fn w_state(amplitudes: &[Complex64]) -> Result<PureState> {
    let n = amplitudes.len();
    if n < 2 || !n.is_multiple_of(2) || n > MAX_QUBITS {
        return Err(argument(format!("a 2N-qubit W state needs an even count in 2..={MAX_QUBITS}, got {n}")));
    }
    let register = QubitRegister::primed_pairs(n / 2)?;
    let terms: Vec<(usize, Complex64)> = amplitudes.iter().enumerate().map(|(k, &a)| (register.bit(k), a)).collect();
    PureState::from_terms(register, &terms)
}

/// Applies the damping map of one cavity-reservoir pair to a state on `(c, r)`.
///
/// The map fixes `|00⟩`, sends `|10⟩ ↦ ξ|10⟩ + χ|01⟩` and completes the
/// one-excitation rotation with `|01⟩ ↦ -χ|10⟩ + ξ|01⟩`. Inputs with weight
/// on `|11⟩` are rejected.
pub fn single_pair_map(state: &PureState, kappa_t: f64) -> Result<PureState> {
    if state.register().size() != 2 {
        return Err(argument("single_pair_map acts on a two-qubit (cavity, reservoir) state"));
    }
    let labels = state.register().labels();
    damp_pair(state, &labels[0], &labels[1], kappa_t)
}

/// [`single_pair_map`] applied to the `(cavity, reservoir)` qubits of a larger register.
pub fn damp_pair(state: &PureState, cavity: &str, reservoir: &str, kappa_t: f64) -> Result<PureState> {
    let d = damping_amplitudes(kappa_t)?;
    let reg = state.register();
    let pos = reg.positions(&[cavity, reservoir])?;
    let (cbit, rbit) = (reg.bit(pos[0]), reg.bit(pos[1]));
    let a = state.amplitudes();
    let doubly: f64 =
        a.iter().enumerate().filter(|(i, _)| i & cbit != 0 && i & rbit != 0).map(|(_, z)| z.norm_sqr()).sum();
    if doubly.sqrt() > NORM_TOL {
        return Err(argument("state has support on |11⟩ of the pair, outside the damping sector"));
    }
    let mut out = a.to_vec();
    for base in (0..a.len()).filter(|i| i & (cbit | rbit) == 0) {
        let (i10, i01) = (base | cbit, base | rbit);
        out[i10] = a[i10] * d.xi - a[i01] * d.chi;
        out[i01] = a[i10] * d.chi + a[i01] * d.xi;
        out[base | cbit | rbit] = ZERO;
    }
    PureState::new(reg.clone(), out)
}

//! Entanglement functionals: concurrence, tangles, residual entanglement.
//!
//! Every two-qubit quantity here is the *squared* concurrence. Pure-state
//! bipartitions use the linear entropy `τ = 2(1 - tr ρ²)` of a marginal.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{argument, Result};
use crate::model::{damping_amplitudes, InitialPairState};
use crate::tensor::{psd_eigen, reduce_amplitudes, singular_values, ComplexMatrix, PureState};
use crate::tolerances::WOOTTERS_SUPPORT_TOL;

/// Which functional produced a [`TangleValue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TangleKind {
    PureBipartition,
    TwoQubitSquaredConcurrence,
    Residual,
    ThreeTangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangleValue {
    pub value: f64,
    pub kind: TangleKind,
}

impl TangleValue {
    /// Value with round-off negatives (down to `-1e-10`) reported as zero.
    pub fn reported(&self) -> f64 {
        if self.value < 0.0 && self.value >= -1e-10 {
            0.0
        } else {
            self.value
        }
    }
}

/// Squared pairwise concurrences of the two-pair cavity-reservoir state.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PairwiseConcurrences {
    pub c1c2: f64,
    pub r1r2: f64,
    pub c1r2: f64,
    pub c2r1: f64,
}

impl PairwiseConcurrences {
    pub fn sum(&self) -> f64 {
        self.c1c2 + self.r1r2 + self.c1r2 + self.c2r1
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [self.c1c2 - other.c1c2, self.r1r2 - other.r1r2, self.c1r2 - other.c1r2, self.c2r1 - other.c2r1]
            .iter()
            .fold(0.0, |m, d| m.max(d.abs()))
    }

    pub fn all_zero(&self) -> bool {
        self.sum() == 0.0
    }
}

/// Nonzero entries of the anti-diagonal `σ_y⊗σ_y`.
const SPIN_FLIP_SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];

/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`, written out entrywise.
pub fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = rho[(3 - i, 3 - j)].conj() * (SPIN_FLIP_SIGN[i] * SPIN_FLIP_SIGN[j]);
        }
    }
    out
}

/// Squared Wootters concurrence of a two-qubit density operator.
///
/// The spectrum of `ρρ̃` is that of the Hermitian `√ρ ρ̃ √ρ`. On the support of
/// `ρ = Σ p_k |e_k⟩⟨e_k|` this matrix factors as `T†T` with
/// `T_kl = √(p_k p_l) e_kᵀ (σ_y⊗σ_y) e_l`, so the `λ_i` are the singular values of `T`.
pub fn wootters_concurrence_sq(rho: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(argument(format!("expected a 4x4 two-qubit operator, got {}x{}", rho.dim(), rho.dim())));
    }
    rho.check_density()?;
    let eig = psd_eigen(rho)?;
    let support: Vec<Vec<Complex64>> = (0..4)
        .filter(|&k| eig.values[k] > WOOTTERS_SUPPORT_TOL)
        .map(|k| eig.vector(k).into_iter().map(|z| z * eig.values[k].sqrt()).collect())
        .collect();
    let mut t = ComplexMatrix::zeros(support.len());
    for (k, vk) in support.iter().enumerate() {
        for (l, vl) in support.iter().enumerate() {
            t[(k, l)] = (0..4).map(|i| vk[i] * vl[3 - i] * SPIN_FLIP_SIGN[i]).sum();
        }
    }
    let mut s = singular_values(&t)?;
    s.resize(4, 0.0);
    let c = (s[0] - s[1] - s[2] - s[3]).max(0.0);
    Ok(c * c)
}

/// `2(1 - tr ρ²)` for a unit-trace `ρ`, clamped at zero.
pub fn linear_entropy(rho: &ComplexMatrix) -> f64 {
    (2.0 * (1.0 - rho.trace_of_square())).max(0.0)
}

/// Squared pairwise concurrences of the evolved two-pair state in closed form.
pub fn closed_form_pairwise(init: &InitialPairState, kappa_t: f64) -> Result<PairwiseConcurrences> {
    let d = damping_amplitudes(kappa_t)?;
    let ab = init.abs_alpha() * init.abs_beta();
    let b2 = init.abs_beta().powi(2);
    let (xi, chi) = (d.xi, d.chi);
    let both = b2 * xi * xi * chi * chi;
    let sq = |x: f64| {
        let m = x.max(0.0);
        4.0 * m * m
    };
    let cross = sq(ab * xi * chi - both);
    Ok(PairwiseConcurrences {
        c1c2: sq(ab * xi * xi - both),
        r1r2: sq(ab * chi * chi - both),
        c1r2: cross,
        c2r1: cross,
    })
}

/// Pairwise squared concurrences of any `(c1, r1, c2, r2)` state from its marginals.
pub fn extracted_pairwise(state: &PureState) -> Result<PairwiseConcurrences> {
    let pair = |a: &str, b: &str| wootters_concurrence_sq(&state.reduced_density(&[a, b])?);
    Ok(PairwiseConcurrences {
        c1c2: pair("c1", "c2")?,
        r1r2: pair("r1", "r2")?,
        c1r2: pair("c1", "r2")?,
        c2r1: pair("c2", "r1")?,
    })
}

/// Tangle of a pure state across `subset | rest`.
pub fn pure_bipartition_tangle<S: AsRef<str>>(state: &PureState, subset: &[S]) -> Result<f64> {
    if subset.is_empty() || subset.len() >= state.register().size() {
        return Err(argument("the bipartition subset must be a proper nonempty subset"));
    }
    Ok(linear_entropy(&state.reduced_density(subset)?))
}

/// Two-qubit residual entanglement of `pair` in a pure multi-qubit state:
/// the block tangle `pair | rest` minus every cross pairwise squared concurrence.
pub fn residual_two_qubit(state: &PureState, pair: (&str, &str)) -> Result<f64> {
    let reg = state.register();
    let positions = reg.positions(&[pair.0, pair.1])?;
    let block = pure_bipartition_tangle(state, &[pair.0, pair.1])?;
    let mut pairwise = 0.0;
    for i in [pair.0, pair.1] {
        for j in reg.complement(&positions) {
            let j = reg.labels()[j].as_str();
            pairwise += wootters_concurrence_sq(&state.reduced_density(&[i, j])?)?;
        }
    }
    Ok(block - pairwise)
}

/// Three-tangle of a pure three-qubit state: the one-tangle of `focus`
/// minus its two pairwise squared concurrences.
pub fn three_tangle_pure(state: &PureState, focus: &str) -> Result<f64> {
    if state.register().size() != 3 {
        return Err(argument("the three-tangle needs a three-qubit state"));
    }
    let focus = state.register().position(focus)?;
    three_tangle_amplitudes(state.amplitudes(), focus)
}

/// [`three_tangle_pure`] on a normalized 8-amplitude vector, focus given by position.
pub(crate) fn three_tangle_amplitudes(amplitudes: &[Complex64], focus: usize) -> Result<f64> {
    let one = linear_entropy(&reduce_amplitudes(amplitudes, 3, &[focus]));
    let mut pairwise = 0.0;
    for other in (0..3).filter(|&p| p != focus) {
        pairwise += wootters_concurrence_sq(&reduce_amplitudes(amplitudes, 3, &[focus, other]))?;
    }
    Ok(one - pairwise)
}

/// Three-tangle of a normalized three-qubit pure state as `4|Det|`, where
/// `Det` is Cayley's hyperdeterminant of the amplitude cube. Agrees with
/// [`three_tangle_pure`] for every focus; used where speed matters.
pub fn three_tangle_hyperdeterminant(a: &[Complex64]) -> f64 {
    debug_assert_eq!(a.len(), 8);
    let d1 =
        a[0] * a[0] * a[7] * a[7] + a[1] * a[1] * a[6] * a[6] + a[2] * a[2] * a[5] * a[5] + a[4] * a[4] * a[3] * a[3];
    let d2 = a[0] * a[7] * a[3] * a[4]
        + a[0] * a[7] * a[5] * a[2]
        + a[0] * a[7] * a[6] * a[1]
        + a[3] * a[4] * a[5] * a[2]
        + a[3] * a[4] * a[6] * a[1]
        + a[5] * a[2] * a[6] * a[1];
    let d3 = a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4];
    4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm()
}

/// Closed-form qubit-block tangles `(C²_{c1|c2r2}, C²_{r1|c2r2}) = 4|αβ|²(ξ², χ²)`.
pub fn qubit_block_tangles(init: &InitialPairState, kappa_t: f64) -> Result<(f64, f64)> {
    let d = damping_amplitudes(kappa_t)?;
    let t = init.initial_tangle();
    Ok((t * d.xi_sq(), t * d.chi_sq()))
}

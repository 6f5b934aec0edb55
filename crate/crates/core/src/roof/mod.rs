//! Convex-roof upper bounds for mixed-state tangles.
//!
//! For a mixed state `ρ` and a pure-state functional `τ`, the convex roof is
//! `min Σ_x p_x τ(ψ_x)` over pure-state decompositions `ρ = Σ_x p_x |ψ_x⟩⟨ψ_x|`.
//! Any explored decomposition gives an upper bound; [`estimate_roof`] returns
//! the best one found by seeded restarts of [`TableauSearch`] across
//! decomposition sizes `m ∈ {r, …, min(r², cap)}`.

mod search;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use search::{RotationKind, SearchSettings, StepOutcome, Tableau, TableauSearch};

use crate::error::{argument, Error, Result};
use crate::measures::{linear_entropy, three_tangle_amplitudes, three_tangle_hyperdeterminant};
use crate::tensor::{psd_eigen, reduce_amplitudes, ComplexMatrix};
use crate::tolerances::RANK_TOL;

/// Optimizer settings shared by every restart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoofConfig {
    /// Random restarts per decomposition size, in addition to the eigen-ensemble start.
    pub restarts: usize,
    /// Largest decomposition size explored (never below the rank).
    pub max_decomposition: usize,
    pub seed: u64,
    pub search: SearchSettings,
}

impl Default for RoofConfig {
    fn default() -> Self {
        Self { restarts: 16, max_decomposition: 8, seed: 0, search: SearchSettings::default() }
    }
}

/// Best upper bound found, with optimizer diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoofEstimate {
    pub upper_bound: f64,
    pub rank: usize,
    /// Size of the decomposition achieving `upper_bound`.
    pub decomposition_size: usize,
    /// Search runs that completed, over all sizes.
    pub restarts_used: usize,
    /// Runs discarded after a numerical failure.
    pub restarts_failed: usize,
    /// Whether the run achieving `upper_bound` met its convergence criterion.
    pub converged: bool,
    pub seed: u64,
    /// Running best after each decomposition size, as `(m, bound)`.
    pub by_size: Vec<(usize, f64)>,
}

/// A tangle functional on a normalized pure state.
pub type PureFunctional<'a> = &'a (dyn Fn(&[Complex64]) -> Result<f64> + Sync);

/// Linear-entropy tangle of the qubits at `focus` within an `n`-qubit pure state.
pub fn one_tangle_functional(n: usize, focus: Vec<usize>) -> impl Fn(&[Complex64]) -> Result<f64> + Sync {
    move |amps: &[Complex64]| Ok(linear_entropy(&reduce_amplitudes(amps, n, &focus)))
}

/// Three-tangle of a three-qubit pure state via the one-tangle of `focus`
/// minus its pairwise squared concurrences.
pub fn three_tangle_functional(focus: usize) -> impl Fn(&[Complex64]) -> Result<f64> + Sync {
    move |amps: &[Complex64]| three_tangle_amplitudes(amps, focus)
}

/// Three-tangle of a three-qubit pure state via the hyperdeterminant.
pub fn hyperdeterminant_functional(amps: &[Complex64]) -> Result<f64> {
    Ok(three_tangle_hyperdeterminant(amps))
}

struct RunResult {
    bound: f64,
    converged: bool,
}

/// Upper bound on the convex roof of `tangle` at `rho`.
pub fn estimate_roof(rho: &ComplexMatrix, tangle: PureFunctional<'_>, config: &RoofConfig) -> Result<RoofEstimate> {
    rho.check_density()?;
    let eig = psd_eigen(rho)?;
    let basis: Vec<Vec<Complex64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &mu)| mu > RANK_TOL)
        .map(|(k, &mu)| eig.vector(k).into_iter().map(|z| z * mu.sqrt()).collect())
        .collect();
    let rank = basis.len();
    if rank == 0 {
        return Err(argument("the zero operator has no decomposition"));
    }
    let max_m = (rank * rank).min(config.max_decomposition).max(rank);

    let mut best: Option<(f64, usize, bool)> = None;
    let mut by_size = Vec::new();
    let mut used = 0;
    let mut failed = 0;
    for m in rank..=max_m {
        let runs: Vec<Result<RunResult>> =
            (0..=config.restarts).into_par_iter().map(|restart| run_once(&basis, tangle, config, m, restart)).collect();
        for run in runs {
            match run {
                Ok(r) => {
                    used += 1;
                    if best.is_none_or(|(b, _, _)| r.bound < b) {
                        best = Some((r.bound, m, r.converged));
                    }
                }
                Err(Error::Numeric(_)) => failed += 1,
                Err(e) => return Err(e),
            }
        }
        if let Some((b, _, _)) = best {
            by_size.push((m, b));
        }
    }
    let (upper_bound, decomposition_size, converged) =
        best.ok_or_else(|| Error::Numeric("every roof search run failed".into()))?;
    Ok(RoofEstimate {
        upper_bound,
        rank,
        decomposition_size,
        restarts_used: used,
        restarts_failed: failed,
        converged,
        seed: config.seed,
        by_size,
    })
}

/// Restart 0 starts from the eigen-ensemble; the rest from seeded random tableaux.
fn run_once(
    basis: &[Vec<Complex64>],
    tangle: PureFunctional<'_>,
    config: &RoofConfig,
    m: usize,
    restart: usize,
) -> Result<RunResult> {
    let rank = basis.len();
    let tableau = if restart == 0 {
        Tableau::identity(m, rank)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(((m as u64) << 32) | restart as u64);
        Tableau::random(m, rank, &mut rng)?
    };
    let mut search = TableauSearch::new(tableau, basis, tangle, config.search.clone())?;
    let bound = search.run()?;
    Ok(RunResult { bound, converged: search.is_converged() })
}

/// Roof of the three-tangle for a three-qubit density operator.
pub fn roof_three_tangle(rho: &ComplexMatrix, config: &RoofConfig) -> Result<RoofEstimate> {
    if rho.dim() != 8 {
        return Err(argument("the three-tangle roof needs an 8x8 operator"));
    }
    estimate_roof(rho, &hyperdeterminant_functional, config)
}

/// Roof of the one-tangle of the qubits at `focus` (positions) in an `n`-qubit operator.
pub fn roof_one_tangle(rho: &ComplexMatrix, focus: &[usize], config: &RoofConfig) -> Result<RoofEstimate> {
    let n = rho.dim().trailing_zeros() as usize;
    if rho.dim() != 1 << n || focus.is_empty() || focus.iter().any(|&p| p >= n) {
        return Err(argument("focus qubits must index a register-backed operator"));
    }
    estimate_roof(rho, &one_tangle_functional(n, focus.to_vec()), config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn pure_input_returns_the_pure_tangle() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut ghz = vec![real(0.0); 8];
        ghz[0] = real(h);
        ghz[7] = real(h);
        let est = roof_three_tangle(&ComplexMatrix::projector(&ghz), &RoofConfig::default()).unwrap();
        assert_eq!(est.rank, 1);
        assert_eq!(est.decomposition_size, 1);
        assert!((est.upper_bound - 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_operator_is_rejected() {
        let f = one_tangle_functional(1, vec![0]);
        let zero = ComplexMatrix::zeros(2);
        assert!(estimate_roof(&zero, &f, &RoofConfig::default()).is_err());
    }

    #[test]
    fn maximally_mixed_qubit_pair_has_zero_one_tangle_roof() {
        // I/4 decomposes into product states, so the roof of the A|B tangle is 0.
        let rho = ComplexMatrix::from_diagonal(&[0.25; 4]);
        let est = roof_one_tangle(&rho, &[0], &RoofConfig { restarts: 2, ..Default::default() }).unwrap();
        assert!(est.upper_bound < 1e-9, "{}", est.upper_bound);
    }
}

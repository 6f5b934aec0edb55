use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{argument, Result};
use crate::measures::{pure_bipartition_tangle, residual_two_qubit, wootters_concurrence_sq};
use crate::model::{evolved_two_pair_state, w_state, InitialPairState};
use crate::roof::{roof_one_tangle, RoofConfig};
use crate::tensor::{rank_estimate, PureState, QubitRegister};
use crate::tolerances::RANK_TOL;

/// Slack below which a sample is cataloged as violating.
pub const VIOLATION_THRESHOLD: f64 = -1e-8;

/// Violations kept verbatim in a catalog; the rest are only counted.
const MAX_LISTED: usize = 64;

/// Where a random four-qubit sample came from. Samples cycle through the families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleFamily {
    /// Normalized complex-normal amplitudes.
    Generic,
    /// Schmidt rank two across `A1A1' | A2A2'`, so `ρ_{A1A1'}` has rank two.
    SchmidtRankTwo,
    /// Single-excitation superpositions.
    WType,
    /// The evolved cavity-reservoir state with random `α` (and phase) and `κt`.
    CavityReservoir,
    /// Two Bell pairs across the cut plus complex-normal noise.
    PerturbedBellPairs,
}

const FAMILIES: [SampleFamily; 5] = [
    SampleFamily::Generic,
    SampleFamily::SchmidtRankTwo,
    SampleFamily::WType,
    SampleFamily::CavityReservoir,
    SampleFamily::PerturbedBellPairs,
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub family: SampleFamily,
    pub weak_slack: f64,
    pub marginal_rank: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FamilyStats {
    pub samples: usize,
    pub violations: usize,
    pub min_slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationCatalog {
    pub seed: u64,
    pub trials: usize,
    pub threshold: f64,
    pub families: BTreeMap<SampleFamily, FamilyStats>,
    /// Samples per rank of `ρ_{A1A1'}`.
    pub samples_by_rank: BTreeMap<usize, usize>,
    /// Violations per rank of `ρ_{A1A1'}`.
    pub violations_by_rank: BTreeMap<usize, usize>,
    pub total_violations: usize,
    /// The first few violations found.
    pub listed: Vec<Violation>,
}

impl ViolationCatalog {
    /// Violations whose two-qubit marginal has rank at most two.
    pub fn low_rank_violations(&self) -> usize {
        self.violations_by_rank.range(..=2).map(|(_, n)| n).sum()
    }
}

fn normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| normal(rng)).collect()
}

/// Two orthonormal vectors in C⁴ by Gram-Schmidt on complex-normal draws.
fn orthonormal_pair(rng: &mut ChaCha8Rng) -> (Vec<Complex64>, Vec<Complex64>) {
    let normalize = |v: &mut Vec<Complex64>| {
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= n);
    };
    let mut u = random_vector(rng, 4);
    normalize(&mut u);
    let mut v = random_vector(rng, 4);
    let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
    v.iter_mut().zip(&u).for_each(|(b, a)| *b -= a * proj);
    normalize(&mut v);
    (u, v)
}

fn sample(family: SampleFamily, rng: &mut ChaCha8Rng, register: &QubitRegister) -> Result<PureState> {
    match family {
        SampleFamily::Generic => PureState::normalized(register.clone(), random_vector(rng, 16)),
        SampleFamily::SchmidtRankTwo => {
            let (u1, u2) = orthonormal_pair(rng);
            let (v1, v2) = orthonormal_pair(rng);
            let lambda: f64 = rng.random_range(0.05..0.95);
            let (s1, s2) = (lambda.sqrt(), (1.0 - lambda).sqrt());
            // Block A1A1' is the high two bits of the index.
            let amps = (0..16).map(|i| u1[i >> 2] * v1[i & 3] * s1 + u2[i >> 2] * v2[i & 3] * s2).collect();
            PureState::normalized(register.clone(), amps)
        }
        SampleFamily::WType => {
            let mut a = random_vector(rng, 4);
            let n = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            a.iter_mut().for_each(|z| *z /= n);
            w_state(&a)
        }
        SampleFamily::CavityReservoir => {
            let alpha: f64 = rng.random_range(0.01..0.99);
            let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let beta = Complex64::from_polar((1.0 - alpha * alpha).sqrt(), phase);
            let init = InitialPairState::new(Complex64::new(alpha, 0.0), beta)?;
            let kappa_t: f64 = rng.random_range(0.0..5.0);
            let s = evolved_two_pair_state(&init, kappa_t)?;
            PureState::new(register.clone(), s.amplitudes().to_vec())
        }
        SampleFamily::PerturbedBellPairs => {
            let eps: f64 = rng.random_range(0.0..0.5);
            let mut amps = random_vector(rng, 16);
            amps.iter_mut().for_each(|z| *z *= eps);
            for i in [0b0000, 0b0101, 0b1010, 0b1111] {
                amps[i] += 0.5;
            }
            PureState::normalized(register.clone(), amps)
        }
    }
}

/// Samples four-qubit pure states on `A1 A1' A2 A2'` and catalogs those with
/// weak-monogamy slack `C²_{A1A1'|A2A2'} - Σ C²_{ij}` below [`VIOLATION_THRESHOLD`],
/// recording the rank of `ρ_{A1A1'}`.
pub fn rank_violation_search(seed: u64, trials: usize) -> Result<ViolationCatalog> {
    if trials == 0 {
        return Err(argument("the violation search needs at least one trial"));
    }
    let register = QubitRegister::primed_pairs(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut catalog = ViolationCatalog {
        seed,
        trials,
        threshold: VIOLATION_THRESHOLD,
        families: FAMILIES
            .iter()
            .map(|&f| (f, FamilyStats { min_slack: f64::INFINITY, ..Default::default() }))
            .collect(),
        samples_by_rank: BTreeMap::new(),
        violations_by_rank: BTreeMap::new(),
        total_violations: 0,
        listed: Vec::new(),
    };
    for trial in 0..trials {
        let family = FAMILIES[trial % FAMILIES.len()];
        let state = sample(family, &mut rng, &register)?;
        let weak_slack = residual_two_qubit(&state, ("A1", "A1'"))?;
        let marginal_rank = rank_estimate(&state.reduced_density(&["A1", "A1'"])?, RANK_TOL)?;
        *catalog.samples_by_rank.entry(marginal_rank).or_default() += 1;
        let stats = catalog.families.get_mut(&family).expect("every family is registered");
        stats.samples += 1;
        stats.min_slack = stats.min_slack.min(weak_slack);
        if weak_slack < VIOLATION_THRESHOLD {
            stats.violations += 1;
            catalog.total_violations += 1;
            *catalog.violations_by_rank.entry(marginal_rank).or_default() += 1;
            if catalog.listed.len() < MAX_LISTED {
                catalog.listed.push(Violation { trial, family, weak_slack, marginal_rank });
            }
        }
    }
    Ok(catalog)
}

/// The two-Bell-pair counterexample: Bell pairs on `(A1, A2)` and `(A1', A2')`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BellPairReport {
    /// `C²_{A1A1'|A2A2'} = 2(1 - tr ρ²_{A1A1'}) = 3/2`.
    pub block_tangle: f64,
    /// Sum of the four cross squared concurrences (`= 2`).
    pub pairwise_sum: f64,
    /// Weak-form slack `block_tangle - pairwise_sum`.
    pub weak_slack: f64,
    /// Roof upper bounds on `C²_{A1|A2A2'}` and `C²_{A1'|A2A2'}`.
    pub qubit_block_roofs: (f64, f64),
    /// `block_tangle - Σ roofs`. The roofs only bound from above, so this is a
    /// lower bound on the strong-form slack.
    pub strong_slack_lower: f64,
    /// The strong-form slack never exceeds the weak-form slack, because each
    /// qubit-block tangle dominates its pairwise terms.
    pub strong_slack_upper: f64,
    pub marginal_rank: usize,
    pub strong_form_violated: bool,
}

pub fn bell_pair_counterexample(config: &RoofConfig) -> Result<BellPairReport> {
    let register = QubitRegister::primed_pairs(2)?;
    let half = Complex64::new(0.5, 0.0);
    let state = PureState::from_terms(register, &[(0b0000, half), (0b0101, half), (0b1010, half), (0b1111, half)])?;
    let block_tangle = pure_bipartition_tangle(&state, &["A1", "A1'"])?;
    let mut pairwise_sum = 0.0;
    for i in ["A1", "A1'"] {
        for j in ["A2", "A2'"] {
            pairwise_sum += wootters_concurrence_sq(&state.reduced_density(&[i, j])?)?;
        }
    }
    let weak_slack = block_tangle - pairwise_sum;
    let r1 = roof_one_tangle(&state.reduced_density(&["A1", "A2", "A2'"])?, &[0], config)?.upper_bound;
    let r2 = roof_one_tangle(&state.reduced_density(&["A1'", "A2", "A2'"])?, &[0], config)?.upper_bound;
    Ok(BellPairReport {
        block_tangle,
        pairwise_sum,
        weak_slack,
        qubit_block_roofs: (r1, r2),
        strong_slack_lower: block_tangle - r1 - r2,
        strong_slack_upper: weak_slack,
        marginal_rank: rank_estimate(&state.reduced_density(&["A1", "A1'"])?, RANK_TOL)?,
        strong_form_violated: weak_slack < VIOLATION_THRESHOLD,
    })
}

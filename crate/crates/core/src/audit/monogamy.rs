use rayon::prelude::*;
use serde::Serialize;

use super::trajectory::trajectory;
use super::{CheckSummary, Verdict};
use crate::error::Result;
use crate::model::{evolved_three_pair_state, evolved_two_pair_state, InitialPairState};
use crate::roof::{roof_one_tangle, roof_three_tangle, RoofConfig, RoofEstimate};
use crate::tolerances::ROOF_ZERO;

/// Per-point defects of the two-pair audit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonogamyPoint {
    pub kappa_t: f64,
    /// `C²_{c1r1|c2r2} - Σ C²_{ij}` with closed-form pairwise terms.
    pub pairwise_slack: f64,
    /// The same slack with Wootters pairwise terms.
    pub pairwise_slack_numeric: f64,
    /// `|pairwise_slack - residual_m|`.
    pub slack_definition_defect: f64,
    /// `|C²_{c1|c2r2} + C²_{r1|c2r2} - C²_{c1r1|c2r2}|`.
    pub qubit_block_defect: f64,
    /// `|C²_{c1r1|c2r2}(t) - 4|αβ|²|`.
    pub conservation_defect: f64,
    /// Largest closed-form vs Wootters pairwise discrepancy.
    pub pairwise_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonogamyAudit {
    pub alpha: f64,
    pub points: Vec<MonogamyPoint>,
    pub checks: Vec<CheckSummary>,
}

/// Audits the two-pair monogamy relation, the block/qubit-block identity,
/// conservation of the block tangle and closed-form/numeric agreement.
pub fn monogamy_audit(init: &InitialPairState, grid: &[f64]) -> Result<MonogamyAudit> {
    let bound = init.initial_tangle();
    let points: Vec<MonogamyPoint> = trajectory(init, grid)?
        .iter()
        .map(|r| {
            let p = &r.pairwise;
            let pairwise_slack = r.block_tangle - (p.c1c2 + p.r1r2 + p.c1r2 + p.c2r1);
            MonogamyPoint {
                kappa_t: r.kappa_t,
                pairwise_slack,
                pairwise_slack_numeric: r.block_tangle - r.numeric_pairwise.sum(),
                slack_definition_defect: (pairwise_slack - r.residual_m).abs(),
                qubit_block_defect: (r.qubit_block.0 + r.qubit_block.1 - r.block_tangle).abs(),
                conservation_defect: (r.block_tangle - bound).abs(),
                pairwise_defect: r.pairwise.max_abs_diff(&r.numeric_pairwise),
            }
        })
        .collect();
    let max = |f: fn(&MonogamyPoint) -> f64| points.iter().map(f).fold(0.0, f64::max);
    let min_slack = points.iter().map(|p| p.pairwise_slack.min(p.pairwise_slack_numeric)).fold(f64::INFINITY, f64::min);
    let checks = vec![
        CheckSummary::inequality("pairwise-monogamy", min_slack, 1e-10),
        CheckSummary::identity("slack-definition", max(|p| p.slack_definition_defect), 1e-12),
        CheckSummary::identity("qubit-block-sum", max(|p| p.qubit_block_defect), 1e-12),
        CheckSummary::identity("conservation", max(|p| p.conservation_defect), 1e-12),
        CheckSummary::identity("closed-form-vs-wootters", max(|p| p.pairwise_defect), 1e-9),
    ];
    Ok(MonogamyAudit { alpha: init.abs_alpha(), points, checks })
}

/// Convex-roof estimates of the mixed qubit-block tangles against their closed forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QubitBlockRoofPoint {
    pub kappa_t: f64,
    /// Roof of the `c1 | c2 r2` one-tangle of `ρ_{c1 c2 r2}`.
    pub cavity_roof: RoofEstimate,
    pub cavity_closed: f64,
    /// Roof of the `r1 | c2 r2` one-tangle of `ρ_{r1 c2 r2}`.
    pub reservoir_roof: RoofEstimate,
    pub reservoir_closed: f64,
}

impl QubitBlockRoofPoint {
    pub fn max_defect(&self) -> f64 {
        (self.cavity_roof.upper_bound - self.cavity_closed)
            .abs()
            .max((self.reservoir_roof.upper_bound - self.reservoir_closed).abs())
    }
}

pub fn qubit_block_roofs(
    init: &InitialPairState,
    kappa_ts: &[f64],
    config: &RoofConfig,
) -> Result<Vec<QubitBlockRoofPoint>> {
    kappa_ts
        .iter()
        .map(|&t| {
            let state = evolved_two_pair_state(init, t)?;
            let (cavity_closed, reservoir_closed) = crate::measures::qubit_block_tangles(init, t)?;
            Ok(QubitBlockRoofPoint {
                kappa_t: t,
                cavity_roof: roof_one_tangle(&state.reduced_density(&["c1", "c2", "r2"])?, &[0], config)?,
                cavity_closed,
                reservoir_roof: roof_one_tangle(&state.reduced_density(&["r1", "c2", "r2"])?, &[0], config)?,
                reservoir_closed,
            })
        })
        .collect()
}

/// Three-tangle roofs of the cavity and reservoir triples at one time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThreePairPoint {
    pub kappa_t: f64,
    pub cavity_roof: f64,
    pub reservoir_roof: f64,
    pub sum: f64,
    /// `C²_{c1r1|c2r2c3r3}(0) = 4|αβ|²`.
    pub bound: f64,
    pub slack: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThreePairAudit {
    pub alpha: f64,
    pub bound: f64,
    pub seed: u64,
    pub points: Vec<ThreePairPoint>,
    pub check: CheckSummary,
}

/// Compares roof upper bounds of `τ₃(ρ_{c1c2c3}) + τ₃(ρ_{r1r2r3})` against
/// `4|αβ|²` along the three-pair evolution. A sum above the bound (plus
/// [`ROOF_ZERO`]) is inconclusive, never a violation: the roofs are upper bounds.
pub fn eq10_audit(init: &InitialPairState, grid: &[f64], config: &RoofConfig) -> Result<ThreePairAudit> {
    let bound = init.initial_tangle();
    let points: Vec<ThreePairPoint> = grid
        .par_iter()
        .map(|&t| {
            let state = evolved_three_pair_state(init, t)?;
            let cavity = roof_three_tangle(&state.reduced_density(&["c1", "c2", "c3"])?, config)?;
            let reservoir = roof_three_tangle(&state.reduced_density(&["r1", "r2", "r3"])?, config)?;
            let sum = cavity.upper_bound + reservoir.upper_bound;
            let slack = bound - sum;
            Ok(ThreePairPoint {
                kappa_t: t,
                cavity_roof: cavity.upper_bound,
                reservoir_roof: reservoir.upper_bound,
                sum,
                bound,
                slack,
                verdict: if slack >= -ROOF_ZERO { Verdict::Pass } else { Verdict::Inconclusive },
            })
        })
        .collect::<Result<_>>()?;
    let min_slack = points.iter().map(|p| p.slack).fold(f64::INFINITY, f64::min);
    let mut check = CheckSummary::inequality("three-tangle-bound", min_slack, ROOF_ZERO);
    if check.verdict == Verdict::Fail {
        check.verdict = Verdict::Inconclusive;
    }
    Ok(ThreePairAudit { alpha: init.abs_alpha(), bound, seed: config.seed, points, check })
}

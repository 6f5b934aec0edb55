//! Scenario orchestration: trajectories, plateau analytics, the extremum
//! search and the monogamy audits.

mod extremum;
mod grid;
mod monogamy;
mod trajectory;
mod violations;

use serde::Serialize;

pub use extremum::{extremum_search, residual_closed_form, Extremum};
pub use grid::{AlphaSweep, KappaGrid, Spacing};
pub use monogamy::{
    eq10_audit, monogamy_audit, qubit_block_roofs, MonogamyAudit, MonogamyPoint, QubitBlockRoofPoint, ThreePairAudit,
    ThreePairPoint,
};
pub use trajectory::{
    entanglement_record, esd_esb_times, locate_boundary, trajectory, EntanglementRecord, PlateauReport, RecordFlags,
};
pub use violations::{
    bell_pair_counterexample, rank_violation_search, BellPairReport, SampleFamily, Violation, ViolationCatalog,
};

/// Outcome of one audited inequality or identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// An optimizer upper bound exceeded the limit; this cannot refute the inequality.
    Inconclusive,
}

/// Summary of one check over a whole grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    /// Largest deviation from an identity (zero for pure inequalities).
    pub max_defect: f64,
    /// Smallest slack of an inequality (`f64::INFINITY` → reported as null for identities).
    pub min_slack: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl CheckSummary {
    /// Identity check: passes when `max_defect <= tolerance`.
    pub fn identity(name: &str, max_defect: f64, tolerance: f64) -> Self {
        let verdict = if max_defect <= tolerance { Verdict::Pass } else { Verdict::Fail };
        Self { name: name.into(), max_defect, min_slack: None, tolerance, verdict }
    }

    /// Inequality check: passes when `min_slack >= -tolerance`.
    pub fn inequality(name: &str, min_slack: f64, tolerance: f64) -> Self {
        let verdict = if min_slack >= -tolerance { Verdict::Pass } else { Verdict::Fail };
        Self { name: name.into(), max_defect: (-min_slack).max(0.0), min_slack: Some(min_slack), tolerance, verdict }
    }
}

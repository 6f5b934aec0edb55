use rayon::prelude::*;
use serde::Serialize;

use crate::error::{argument, Error, Result};
use crate::measures::{
    closed_form_pairwise, extracted_pairwise, pure_bipartition_tangle, qubit_block_tangles, wootters_concurrence_sq,
    PairwiseConcurrences,
};
use crate::model::{evolved_two_pair_state, InitialPairState};

/// ESD/ESB times and the plateau between them, in `κt` units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlateauReport {
    /// True iff `|α| < |β|/2`, i.e. cavity entanglement dies before reservoir entanglement is born.
    pub exists: bool,
    /// Cavity-cavity sudden death `-ln(1 - |α/β|)`; `None` when `|α| >= |β|`.
    pub t_esd: Option<f64>,
    /// Reservoir-reservoir sudden birth `ln|β/α|`; `None` when `|α| >= |β|`.
    pub t_esb: Option<f64>,
    /// `t_esb - t_esd = ln(|β/α| - 1)`; negative when the windows overlap.
    pub width: Option<f64>,
    /// `4|αβ|²` when the plateau exists.
    pub plateau_value: Option<f64>,
}

impl PlateauReport {
    pub fn contains(&self, kappa_t: f64) -> bool {
        match (self.exists, self.t_esd, self.t_esb) {
            (true, Some(a), Some(b)) => kappa_t >= a && kappa_t <= b,
            _ => false,
        }
    }
}

pub fn esd_esb_times(init: &InitialPairState) -> Result<PlateauReport> {
    let (a, b) = (init.abs_alpha(), init.abs_beta());
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::Degenerate("|α| must lie strictly between 0 and 1".into()));
    }
    if a >= b {
        return Ok(PlateauReport { exists: false, t_esd: None, t_esb: None, width: None, plateau_value: None });
    }
    let ratio = b / a;
    let t_esd = -(-(a / b)).ln_1p();
    let t_esb = ratio.ln();
    let width = (ratio - 1.0).ln();
    let exists = a < b / 2.0;
    Ok(PlateauReport {
        exists,
        t_esd: Some(t_esd),
        t_esb: Some(t_esb),
        width: Some(width),
        plateau_value: exists.then(|| init.initial_tangle()),
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecordFlags {
    /// Cavity-cavity entanglement has died (`κt >= t_esd`).
    pub esd_active: bool,
    /// Reservoir-reservoir entanglement is present.
    pub esb_active: bool,
    pub in_plateau: bool,
}

/// Every measure of the two-pair state at one `(α, κt)` point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntanglementRecord {
    pub alpha: f64,
    pub kappa_t: f64,
    /// Closed-form squared pairwise concurrences.
    pub pairwise: PairwiseConcurrences,
    /// The same four quantities from Wootters' formula on extracted marginals.
    pub numeric_pairwise: PairwiseConcurrences,
    /// `C²_{c1r1|c2r2}` from the linear entropy of the `c1 r1` marginal.
    pub block_tangle: f64,
    /// `C²_{c1r1}` from Wootters' formula.
    pub within_pair_c1r1: f64,
    /// Closed-form `4|αβ|² - Σ pairwise`.
    pub residual_m: f64,
    /// Closed-form `(C²_{c1|c2r2}, C²_{r1|c2r2})`.
    pub qubit_block: (f64, f64),
    pub flags: RecordFlags,
}

pub fn entanglement_record(
    init: &InitialPairState,
    kappa_t: f64,
    plateau: &PlateauReport,
) -> Result<EntanglementRecord> {
    let state = evolved_two_pair_state(init, kappa_t)?;
    let pairwise = closed_form_pairwise(init, kappa_t)?;
    let numeric_pairwise = extracted_pairwise(&state)?;
    let block_tangle = pure_bipartition_tangle(&state, &["c1", "r1"])?;
    let within_pair_c1r1 = wootters_concurrence_sq(&state.reduced_density(&["c1", "r1"])?)?;
    let flags = RecordFlags {
        esd_active: plateau.t_esd.is_some_and(|t| kappa_t >= t),
        esb_active: pairwise.r1r2 > 0.0,
        in_plateau: plateau.contains(kappa_t),
    };
    Ok(EntanglementRecord {
        alpha: init.abs_alpha(),
        kappa_t,
        pairwise,
        numeric_pairwise,
        block_tangle,
        within_pair_c1r1,
        residual_m: init.initial_tangle() - pairwise.sum(),
        qubit_block: qubit_block_tangles(init, kappa_t)?,
        flags,
    })
}

/// One record per grid point, in grid order.
pub fn trajectory(init: &InitialPairState, grid: &[f64]) -> Result<Vec<EntanglementRecord>> {
    if grid.windows(2).any(|w| w[1] < w[0]) || grid.iter().any(|&t| t.is_nan() || t < 0.0) {
        return Err(argument("kappa_t grid must be sorted and nonnegative"));
    }
    let plateau = esd_esb_times(init).unwrap_or(PlateauReport {
        exists: false,
        t_esd: None,
        t_esb: None,
        width: None,
        plateau_value: None,
    });
    grid.par_iter().map(|&t| entanglement_record(init, t, &plateau)).collect()
}

/// Bisection for the point in `[lo, hi]` where `entangled` flips, to within `tol`.
/// `entangled(lo)` and `entangled(hi)` must differ.
pub fn locate_boundary<F>(mut entangled: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    let at_lo = entangled(lo)?;
    if at_lo == entangled(hi)? {
        return Err(argument("no sign change inside the bracket"));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if entangled(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

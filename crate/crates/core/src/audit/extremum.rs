use serde::Serialize;

use crate::error::{argument, Result};
use crate::measures::closed_form_pairwise;
use crate::model::InitialPairState;

/// `M_{c1r1}` for real `α` at time `κt`, from the closed-form pairwise terms.
pub fn residual_closed_form(alpha: f64, kappa_t: f64) -> Result<f64> {
    let init = InitialPairState::from_real(alpha)?;
    Ok(init.initial_tangle() - closed_form_pairwise(&init, kappa_t)?.sum())
}

/// Location and value of the largest residual entanglement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Extremum {
    pub alpha: f64,
    pub kappa_t: f64,
    pub residual_m: f64,
    /// Best cell of the coarse grid, `(α, κt, M)`.
    pub coarse: (f64, f64, f64),
    /// Alternating golden-section rounds used by the refinement.
    pub rounds: usize,
}

const KAPPA_T_MAX: f64 = 5.0;
const GOLDEN_TOL: f64 = 1e-9;

/// Maximizes `M(α, κt)` over `α ∈ (0, 1)`, `κt ∈ [0, 5]`.
///
/// A `resolution × resolution` grid locates the best cell; with `refine`,
/// golden-section searches alternate between `κt` and `α` inside the
/// neighbouring grid cells until neither coordinate moves.
pub fn extremum_search(resolution: usize, refine: bool) -> Result<Extremum> {
    if resolution < 32 {
        return Err(argument(format!("extremum grid resolution must be at least 32, got {resolution}")));
    }
    let alphas: Vec<f64> = (0..resolution).map(|i| (i + 1) as f64 / (resolution + 1) as f64).collect();
    let times: Vec<f64> = (0..resolution).map(|j| KAPPA_T_MAX * j as f64 / (resolution - 1) as f64).collect();
    let mut best = (0, 0, f64::NEG_INFINITY);
    for (i, &a) in alphas.iter().enumerate() {
        for (j, &t) in times.iter().enumerate() {
            let m = residual_closed_form(a, t)?;
            if m > best.2 {
                best = (i, j, m);
            }
        }
    }
    let (bi, bj, bm) = best;
    let coarse = (alphas[bi], times[bj], bm);
    if !refine {
        return Ok(Extremum { alpha: coarse.0, kappa_t: coarse.1, residual_m: bm, coarse, rounds: 0 });
    }

    let a_lo = if bi == 0 { alphas[0] / 2.0 } else { alphas[bi - 1] };
    let a_hi = if bi + 1 == resolution { (1.0 + alphas[bi]) / 2.0 } else { alphas[bi + 1] };
    let t_lo = times[bj.saturating_sub(1)];
    let t_hi = times[(bj + 1).min(resolution - 1)];

    let (mut a, mut t) = (coarse.0, coarse.1);
    let mut rounds = 0;
    loop {
        rounds += 1;
        let t_new = golden_max(|x| residual_closed_form(a, x), t_lo, t_hi)?;
        let a_new = golden_max(|x| residual_closed_form(x, t_new), a_lo, a_hi)?;
        let moved = (t_new - t).abs().max((a_new - a).abs());
        a = a_new;
        t = t_new;
        if moved < GOLDEN_TOL || rounds == 50 {
            break;
        }
    }
    Ok(Extremum { alpha: a, kappa_t: t, residual_m: residual_closed_form(a, t)?, coarse, rounds })
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
fn golden_max<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_on_parabola() {
        let x = golden_max(|x| Ok(-(x - 0.3) * (x - 0.3)), 0.0, 1.0).unwrap();
        assert!((x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn rejects_coarse_resolution() {
        assert!(extremum_search(8, true).is_err());
    }

    #[test]
    fn unrefined_is_the_coarse_cell() {
        let e = extremum_search(40, false).unwrap();
        assert_eq!((e.alpha, e.kappa_t, e.residual_m), e.coarse);
        assert_eq!(e.rounds, 0);
    }
}

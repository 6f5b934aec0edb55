//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N PASS|FAIL` line before asserting.

use std::f64::consts::LN_2;
use std::io::Write;
use std::time::{Duration, Instant};

use monogamy_lab::audit::{
    bell_pair_counterexample, eq10_audit, esd_esb_times, extremum_search, locate_boundary, qubit_block_roofs,
    rank_violation_search, trajectory, AlphaSweep, KappaGrid,
};
use monogamy_lab::measures::{extracted_pairwise, residual_two_qubit};
use monogamy_lab::model::{evolved_two_pair_state, w_state, InitialPairState};
use monogamy_lab::roof::{roof_three_tangle, RoofConfig};
use monogamy_lab::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PLATEAU_BOUNDARY_TOL: f64 = 1e-6;
const PLATEAU_BUDGET: Duration = Duration::from_secs(1);
const EXTREMUM_KAPPA_TOL: f64 = 1e-6;
const EXTREMUM_VALUE_TOL: f64 = 1e-6;
const EXTREMUM_ALPHA_TOL: f64 = 1e-5;
const EXTREMUM_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_TOL: f64 = 1e-9;
const ORACLE_BUDGET: Duration = Duration::from_secs(10);
const CONSERVATION_TOL: f64 = 1e-12;
const SLACK_FLOOR: f64 = -1e-10;
const SLACK_DEFINITION_TOL: f64 = 1e-12;
const BLOCK_SUM_TOL: f64 = 1e-12;
const ROOF_TOL: f64 = 1e-3;
const ROOF_BUDGET: Duration = Duration::from_secs(60);
const W_NULLITY_TOL: f64 = 1e-9;
const SATURATION_TOL: f64 = 1e-6;
const VIOLATION_TRIALS: usize = 10_000;

fn report(criterion: u32, title: &str, ok: bool, detail: String) {
    let line = format!("criterion {criterion} {}: {title}; {detail}\n", if ok { "PASS" } else { "FAIL" });
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn full_grid() -> (Vec<f64>, Vec<f64>) {
    (AlphaSweep::default().points(), KappaGrid::default().points())
}

fn alpha_beta_sq(alpha: f64) -> f64 {
    4.0 * alpha * alpha * (1.0 - alpha * alpha)
}

#[test]
fn criterion_01_plateau() {
    let start = Instant::now();
    let alpha = 1.0 / 10f64.sqrt();
    let init = InitialPairState::from_real(alpha).unwrap();
    let (t_esd_true, t_esb_true) = (1.5f64.ln(), 3f64.ln());

    let inside: Vec<f64> = (1..400).map(|i| t_esd_true + (t_esb_true - t_esd_true) * i as f64 / 400.0).collect();
    let recs = trajectory(&init, &inside).unwrap();
    let interior_zero = recs.iter().all(|r| r.pairwise.all_zero() && r.numeric_pairwise.all_zero());
    let interior_m = recs.iter().map(|r| (r.residual_m - 0.36).abs()).fold(0.0, f64::max);
    let edges = trajectory(&init, &[t_esd_true, t_esb_true]).unwrap();
    let edge_max = edges.iter().map(|r| r.pairwise.sum()).fold(0.0, f64::max);

    let plateau = esd_esb_times(&init).unwrap();
    let analytic = (plateau.t_esd.unwrap() - t_esd_true).abs().max((plateau.t_esb.unwrap() - t_esb_true).abs());

    let state_at = |t: f64| extracted_pairwise(&evolved_two_pair_state(&init, t).unwrap()).unwrap();
    let esd = locate_boundary(|t| Ok(state_at(t).c1c2 > 0.0), 0.2, 0.6, 1e-10).unwrap();
    let esb = locate_boundary(|t| Ok(state_at(t).r1r2 > 0.0), 0.9, 1.3, 1e-10).unwrap();
    let located = (esd - t_esd_true).abs().max((esb - t_esb_true).abs());
    let elapsed = start.elapsed();

    let ok = interior_zero
        && interior_m <= 1e-12
        && edge_max <= 1e-24
        && analytic <= 1e-12
        && located <= PLATEAU_BOUNDARY_TOL
        && elapsed < PLATEAU_BUDGET;
    report(
        1,
        "plateau on [ln 3/2, ln 3] for alpha = 1/sqrt(10)",
        ok,
        format!(
            "interior exact zeros {interior_zero}, |M - 0.36| <= {interior_m:.1e}, edge terms <= {edge_max:.1e}, \
             sign changes within {located:.1e}, {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_02_extremum() {
    let start = Instant::now();
    let found = extremum_search(256, true).unwrap();
    let elapsed = start.elapsed();
    let s13 = 13f64.sqrt();
    let m_star = (13.0 * s13 - 19.0) / 34.0;
    let a_star = ((9.0 + s13) / 34.0).sqrt();
    let (dk, dm, da) = ((found.kappa_t - LN_2).abs(), (found.residual_m - m_star).abs(), (found.alpha - a_star).abs());
    let ok =
        dk <= EXTREMUM_KAPPA_TOL && dm <= EXTREMUM_VALUE_TOL && da <= EXTREMUM_ALPHA_TOL && elapsed < EXTREMUM_BUDGET;
    report(
        2,
        "refined extremum of the residual entanglement",
        ok,
        format!("|dkt| {dk:.1e}, |dM| {dm:.1e}, |dalpha| {da:.1e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_03_oracle_equivalence() {
    let start = Instant::now();
    let (alphas, kts) = full_grid();
    let mut worst = 0.0f64;
    for &a in &alphas {
        let init = InitialPairState::from_real(a).unwrap();
        for r in trajectory(&init, &kts).unwrap() {
            worst = worst.max(r.pairwise.max_abs_diff(&r.numeric_pairwise));
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        "Wootters on extracted marginals vs closed forms, 99x256 grid",
        worst <= ORACLE_TOL && elapsed < ORACLE_BUDGET,
        format!("max defect {worst:.1e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_04_conservation() {
    let (alphas, kts) = full_grid();
    let mut worst = 0.0f64;
    for &a in &alphas {
        let init = InitialPairState::from_real(a).unwrap();
        let expected = alpha_beta_sq(a);
        for r in trajectory(&init, &kts).unwrap() {
            worst = worst.max((r.block_tangle - expected).abs());
        }
    }
    report(4, "block tangle equals 4|alpha beta|^2", worst <= CONSERVATION_TOL, format!("max defect {worst:.1e}"));
}

#[test]
fn criterion_05_pairwise_monogamy() {
    let (alphas, kts) = full_grid();
    let (mut min_slack, mut worst_def) = (f64::INFINITY, 0.0f64);
    for &a in &alphas {
        let init = InitialPairState::from_real(a).unwrap();
        for r in trajectory(&init, &kts).unwrap() {
            let slack = r.block_tangle - r.numeric_pairwise.sum();
            min_slack = min_slack.min(slack);
            worst_def = worst_def.max((r.block_tangle - r.pairwise.sum() - r.residual_m).abs());
        }
    }
    report(
        5,
        "pairwise monogamy slack and residual identity",
        min_slack >= SLACK_FLOOR && worst_def <= SLACK_DEFINITION_TOL,
        format!("min slack {min_slack:.1e}, |slack - M| <= {worst_def:.1e}"),
    );
}

#[test]
fn criterion_06_qubit_block_roofs() {
    let start = Instant::now();
    let (alphas, kts) = full_grid();
    let mut closed = 0.0f64;
    for &a in &alphas {
        let init = InitialPairState::from_real(a).unwrap();
        for r in trajectory(&init, &kts).unwrap() {
            let (cav, res) = r.qubit_block;
            let ab = alpha_beta_sq(a);
            let xi2 = (-r.kappa_t).exp();
            closed = closed.max((cav + res - r.block_tangle).abs());
            closed = closed.max((cav - ab * xi2).abs()).max((res - ab * (1.0 - xi2)).abs());
        }
    }
    let samples = [(0.2, 0.1), (0.3, 0.4), (1.0 / 10f64.sqrt(), LN_2), (0.4, 1.0), (0.5, 0.0)];
    let samples2 = [(0.55, 1.7), (0.61, LN_2), (0.7, 2.5), (0.8, 3.3), (0.9, 4.6)];
    let config = RoofConfig { seed: 6, ..RoofConfig::default() };
    let mut roof = 0.0f64;
    for &(a, t) in samples.iter().chain(&samples2) {
        let init = InitialPairState::from_real(a).unwrap();
        for p in qubit_block_roofs(&init, &[t], &config).unwrap() {
            roof = roof.max(p.max_defect());
        }
    }
    let elapsed = start.elapsed();
    report(
        6,
        "qubit-block decomposition and its convex roofs",
        closed <= BLOCK_SUM_TOL && roof <= ROOF_TOL && elapsed < ROOF_BUDGET,
        format!("closed-form defect {closed:.1e}, roof defect {roof:.1e} at 10 points, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_07_w_nullity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for pairs in [2usize, 3, 4] {
        for _ in 0..100 {
            let mut amps: Vec<Complex64> = (0..2 * pairs)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|z| *z /= norm);
            let state = w_state(&amps).unwrap();
            for k in 1..=pairs {
                let (a, b) = (format!("A{k}"), format!("A{k}'"));
                worst = worst.max(residual_two_qubit(&state, (&a, &b)).unwrap().abs());
            }
        }
    }
    report(7, "W states carry no two-qubit residual", worst <= W_NULLITY_TOL, format!("max |residual| {worst:.1e}"));
}

#[test]
fn criterion_08_three_tangle_nullity() {
    let points = [
        (0.2, 0.3),
        (0.3, 1.2),
        (1.0 / 10f64.sqrt(), 0.6),
        (0.45, LN_2),
        (0.5, 0.05),
        (0.6, 2.0),
        (0.65, 0.9),
        (0.75, 3.0),
        (0.85, 1.5),
        (0.95, 4.0),
    ];
    let marginals = [["c1", "r1", "c2"], ["c1", "r1", "r2"], ["c1", "c2", "r2"], ["r1", "c2", "r2"]];
    let config = RoofConfig { seed: 8, ..RoofConfig::default() };
    let mut worst = 0.0f64;
    for &(a, t) in &points {
        let state = evolved_two_pair_state(&InitialPairState::from_real(a).unwrap(), t).unwrap();
        for m in &marginals {
            let est = roof_three_tangle(&state.reduced_density(m).unwrap(), &config).unwrap();
            worst = worst.max(est.upper_bound);
        }
    }
    report(
        8,
        "three-qubit marginals of the two-pair state have zero three-tangle",
        worst <= ROOF_TOL,
        format!("largest roof upper bound {worst:.1e} over 40 marginals"),
    );
}

#[test]
fn criterion_09_three_pair_bound() {
    let alpha = 0.5;
    let init = InitialPairState::from_real(alpha).unwrap();
    let grid = KappaGrid::linear(0.0, 5.0, 10).unwrap().points();
    let audit = eq10_audit(&init, &grid, &RoofConfig { seed: 9, ..RoofConfig::default() }).unwrap();
    let bound = alpha_beta_sq(alpha);
    let excess = audit.points.iter().map(|p| p.sum - bound).fold(f64::NEG_INFINITY, f64::max);
    let saturation = (audit.points[0].sum - bound).abs();
    report(
        9,
        "three-tangle sum bounded by 4|alpha beta|^2, saturated at t = 0",
        excess <= ROOF_TOL && saturation <= SATURATION_TOL,
        format!("max (sum - bound) {excess:.1e} at 10 points, |sum(0) - bound| {saturation:.1e}"),
    );
}

#[test]
fn criterion_10_violation_search() {
    let catalog = rank_violation_search(10, VIOLATION_TRIALS).unwrap();
    let rank2 = catalog.samples_by_rank.get(&2).copied().unwrap_or(0);
    let bell = bell_pair_counterexample(&RoofConfig { seed: 10, ..RoofConfig::default() }).unwrap();
    // Two Bell pairs across the cut: maximally mixed A1A1' marginal, two unit pairwise terms.
    let block = 2.0 * (1.0 - 0.25);
    let bell_ok = (bell.block_tangle - block).abs() < 1e-12
        && (bell.pairwise_sum - 2.0).abs() < 1e-12
        && bell.weak_slack < 0.0
        && bell.strong_form_violated;
    report(
        10,
        "Bell-pair counterexample and rank-2 immunity",
        bell_ok && catalog.low_rank_violations() == 0 && rank2 > 0 && catalog.trials == VIOLATION_TRIALS,
        format!(
            "Bell slack {:.3}, strong form violated {}, rank-2 samples {rank2} with {} violations, {} violations overall",
            bell.weak_slack,
            bell.strong_form_violated,
            catalog.low_rank_violations(),
            catalog.total_violations
        ),
    );
}

fn run_to_file(args: &[&str], path: &std::path::Path) -> Vec<u8> {
    let mut argv = vec!["monogamy-lab"];
    argv.extend_from_slice(args);
    let p = path.to_str().unwrap();
    argv.extend(["--out", p]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = monogamy_lab_cli::run(argv, &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    std::fs::read(path).unwrap()
}

#[test]
fn criterion_11_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 6] = [
        &["trajectory"],
        &["sweep", "--alpha-sweep", "0.1:0.9:9", "--tcount", "32"],
        &["audit", "--alpha", "0.4", "--tcount", "16", "--roof-samples", "2", "--three-pair", "--seed", "11"],
        &["eq10", "--alpha", "0.6", "--tcount", "3", "--seed", "11", "--format", "csv"],
        &["violations", "--trials", "500", "--seed", "11"],
        &["extremum", "--resolution", "64"],
    ];
    let mut identical = true;
    for (i, args) in runs.iter().enumerate() {
        let path = dir.path().join(format!("run{i}"));
        let first = run_to_file(args, &path);
        let second = run_to_file(args, &path);
        identical &= !first.is_empty() && first == second;
    }
    report(11, "byte-identical reruns", identical, format!("{} commands compared", runs.len()));
}

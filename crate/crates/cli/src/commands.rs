use monogamy_lab::audit::{
    self, bell_pair_counterexample, eq10_audit, esd_esb_times, extremum_search, monogamy_audit, qubit_block_roofs,
    rank_violation_search, CheckSummary, Verdict,
};
use monogamy_lab::model::InitialPairState;
use monogamy_lab::tolerances::ROOF_ZERO;
use serde::Serialize;

use crate::config::{AlphaSpec, Format, RunConfig, REFERENCE_ALPHA};
use crate::error::CliError;
use crate::format::{num, Csv};

/// Rendered command output and whether every check passed.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub passed: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

pub const TRAJECTORY_HEADER: [&str; 9] =
    ["kappa_t", "c2_c1c2", "c2_r1r2", "c2_c1r2", "c2_c2r1", "block_tangle", "c2_c1r1", "residual_m", "in_plateau"];

pub const SWEEP_HEADER: [&str; 3] = ["alpha", "kappa_t", "residual_m"];

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn scalar_alpha(cfg: &RunConfig, command: &str) -> Result<f64, CliError> {
    match cfg.alpha {
        AlphaSpec::Scalar(a) => Ok(a),
        AlphaSpec::Sweep(_) => Err(CliError::Usage(format!("`{command}` takes a scalar --alpha"))),
    }
}

fn only_json(cfg: &RunConfig, command: &str) -> Result<(), CliError> {
    if cfg.output.format != Format::Json {
        return Err(CliError::Usage(format!("`{command}` only writes json")));
    }
    Ok(())
}

/// Evenly spread picks from `points`, always including both ends.
fn sample(points: &[f64], k: usize) -> Vec<f64> {
    match k {
        0 => vec![],
        1 => vec![points[0]],
        _ => {
            let n = points.len() - 1;
            let mut v: Vec<f64> = (0..k).map(|i| points[(i * n + (k - 1) / 2) / (k - 1)]).collect();
            v.dedup();
            v
        }
    }
}

pub fn trajectory(cfg: &RunConfig) -> Result<Report, CliError> {
    let alpha = scalar_alpha(cfg, "trajectory")?;
    let init = InitialPairState::from_real(alpha)?;
    let records = audit::trajectory(&init, &cfg.kappa_t_grid.points())?;
    match cfg.output.format {
        Format::Csv => {
            let mut csv = Csv::new(&TRAJECTORY_HEADER);
            for r in &records {
                let p = r.pairwise;
                let mut fields: Vec<String> =
                    [r.kappa_t, p.c1c2, p.r1r2, p.c1r2, p.c2r1, r.block_tangle, r.within_pair_c1r1, r.residual_m]
                        .iter()
                        .map(|&v| num(v))
                        .collect();
                fields.push(u8::from(r.flags.in_plateau).to_string());
                csv.line(fields);
            }
            Ok(Report::ok(csv.finish()))
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                command: &'static str,
                config: &'a RunConfig,
                plateau: audit::PlateauReport,
                records: Vec<audit::EntanglementRecord>,
            }
            let plateau = esd_esb_times(&init)?;
            Ok(Report::ok(json(&Out { command: "trajectory", config: cfg, plateau, records })?))
        }
    }
}

#[derive(Debug, Serialize)]
struct RidgePoint {
    alpha: f64,
    kappa_t: f64,
    residual_m: f64,
}

pub fn sweep(cfg: &RunConfig) -> Result<Report, CliError> {
    let AlphaSpec::Sweep(s) = cfg.alpha else {
        return Err(CliError::Usage("`sweep` takes --alpha-sweep min:max:count".into()));
    };
    let kappa_t = cfg.kappa_t_grid.points();
    let alphas = s.points();
    let mut surface = Vec::with_capacity(alphas.len());
    for &a in &alphas {
        let init = InitialPairState::from_real(a)?;
        let row: Vec<f64> = audit::trajectory(&init, &kappa_t)?.iter().map(|r| r.residual_m).collect();
        surface.push(row);
    }
    match cfg.output.format {
        Format::Csv => {
            let mut csv = Csv::new(&SWEEP_HEADER);
            for (a, row) in alphas.iter().zip(&surface) {
                for (t, m) in kappa_t.iter().zip(row) {
                    csv.row(&[*a, *t, *m]);
                }
            }
            Ok(Report::ok(csv.finish()))
        }
        Format::Json => {
            let ridge: Vec<RidgePoint> = alphas
                .iter()
                .zip(&surface)
                .map(|(&alpha, row)| {
                    let (i, &m) =
                        row.iter()
                            .enumerate()
                            .fold((0, &f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
                    RidgePoint { alpha, kappa_t: kappa_t[i], residual_m: m }
                })
                .collect();
            #[derive(Serialize)]
            struct Out<'a> {
                command: &'static str,
                config: &'a RunConfig,
                alpha: &'a [f64],
                kappa_t: &'a [f64],
                residual_m: &'a [Vec<f64>],
                ridge: Vec<RidgePoint>,
            }
            let out =
                Out { command: "sweep", config: cfg, alpha: &alphas, kappa_t: &kappa_t, residual_m: &surface, ridge };
            Ok(Report::ok(json(&out)?))
        }
    }
}

pub fn extremum(cfg: &RunConfig) -> Result<Report, CliError> {
    let found = extremum_search(cfg.resolution, true)?;
    match cfg.output.format {
        Format::Csv => {
            let mut csv = Csv::new(&SWEEP_HEADER);
            csv.row(&[found.alpha, found.kappa_t, found.residual_m]);
            Ok(Report::ok(csv.finish()))
        }
        Format::Json => {
            let sqrt13 = 13f64.sqrt();
            let analytic = RidgePoint {
                alpha: ((9.0 + sqrt13) / 34.0).sqrt(),
                kappa_t: std::f64::consts::LN_2,
                residual_m: (13.0 * sqrt13 - 19.0) / 34.0,
            };
            #[derive(Serialize)]
            struct Out<'a> {
                command: &'static str,
                config: &'a RunConfig,
                extremum: audit::Extremum,
                analytic: RidgePoint,
            }
            Ok(Report::ok(json(&Out { command: "extremum", config: cfg, extremum: found, analytic })?))
        }
    }
}

/// Folds per-alpha summaries of the same check into one.
fn merge(into: &mut Vec<CheckSummary>, next: Vec<CheckSummary>) {
    for c in next {
        match into.iter_mut().find(|d| d.name == c.name) {
            None => into.push(c),
            Some(d) => {
                d.max_defect = d.max_defect.max(c.max_defect);
                d.min_slack = match (d.min_slack, c.min_slack) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                if c.verdict == Verdict::Fail || (c.verdict == Verdict::Inconclusive && d.verdict == Verdict::Pass) {
                    d.verdict = c.verdict;
                }
            }
        }
    }
}

fn roof_alpha(cfg: &RunConfig) -> f64 {
    match cfg.alpha {
        AlphaSpec::Scalar(a) => a,
        AlphaSpec::Sweep(s) => {
            let p = s.points();
            p[p.len() / 2]
        }
    }
}

pub fn run_audit(cfg: &RunConfig) -> Result<Report, CliError> {
    only_json(cfg, "audit")?;
    let grid = cfg.kappa_t_grid.points();
    let mut checks = Vec::new();
    for a in cfg.alpha.values() {
        let init = InitialPairState::from_real(a)?;
        merge(&mut checks, monogamy_audit(&init, &grid)?.checks);
    }

    let alpha = roof_alpha(cfg);
    let init = InitialPairState::from_real(alpha)?;
    let picks = sample(&grid, cfg.roof_samples);
    let roofs = qubit_block_roofs(&init, &picks, &cfg.roof)?;
    if !roofs.is_empty() {
        let defect = roofs.iter().map(|p| p.max_defect()).fold(0.0, f64::max);
        let below = roofs.iter().any(|p| {
            p.cavity_roof.upper_bound < p.cavity_closed - ROOF_ZERO
                || p.reservoir_roof.upper_bound < p.reservoir_closed - ROOF_ZERO
        });
        let mut c = CheckSummary::identity("qubit-block-roof", defect, ROOF_ZERO);
        if c.verdict == Verdict::Fail && !below {
            c.verdict = Verdict::Inconclusive;
        }
        checks.push(c);
    }

    let eq10 = if cfg.three_pair { Some(eq10_audit(&init, &picks, &cfg.roof)?) } else { None };
    if let Some(e) = &eq10 {
        checks.push(e.check.clone());
    }
    let passed = checks.iter().all(|c| c.verdict != Verdict::Fail);

    #[derive(Serialize)]
    struct Out<'a> {
        command: &'static str,
        seed: u64,
        passed: bool,
        config: &'a RunConfig,
        checks: Vec<CheckSummary>,
        roof_alpha: f64,
        qubit_block_roofs: Vec<audit::QubitBlockRoofPoint>,
        #[serde(skip_serializing_if = "Option::is_none")]
        eq10: Option<audit::ThreePairAudit>,
    }
    let out = Out {
        command: "audit",
        seed: cfg.seed,
        passed,
        config: cfg,
        checks,
        roof_alpha: alpha,
        qubit_block_roofs: roofs,
        eq10,
    };
    Ok(Report { text: json(&out)?, passed })
}

pub fn eq10(cfg: &RunConfig) -> Result<Report, CliError> {
    let alpha = scalar_alpha(cfg, "eq10")?;
    let init = InitialPairState::from_real(alpha)?;
    let result = eq10_audit(&init, &cfg.kappa_t_grid.points(), &cfg.roof)?;
    let passed = result.check.verdict != Verdict::Fail;
    let text = match cfg.output.format {
        Format::Csv => {
            let mut csv = Csv::new(&["kappa_t", "cavity_roof", "reservoir_roof", "sum", "bound", "slack", "verdict"]);
            for p in &result.points {
                let mut fields: Vec<String> = [p.kappa_t, p.cavity_roof, p.reservoir_roof, p.sum, p.bound, p.slack]
                    .iter()
                    .map(|&v| num(v))
                    .collect();
                fields.push(verdict_name(p.verdict).into());
                csv.line(fields);
            }
            csv.finish()
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                command: &'static str,
                seed: u64,
                config: &'a RunConfig,
                eq10: audit::ThreePairAudit,
            }
            json(&Out { command: "eq10", seed: cfg.seed, config: cfg, eq10: result })?
        }
    };
    Ok(Report { text, passed })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn violations(cfg: &RunConfig) -> Result<Report, CliError> {
    only_json(cfg, "violations")?;
    if cfg.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let catalog = rank_violation_search(cfg.seed, cfg.trials)?;
    let bell = bell_pair_counterexample(&cfg.roof)?;
    let checks = vec![
        CheckSummary::identity("rank2-never-violating", catalog.low_rank_violations() as f64, 0.0),
        CheckSummary {
            name: "bell-pair-strong-form".into(),
            max_defect: 0.0,
            min_slack: Some(bell.strong_slack_upper),
            tolerance: 0.0,
            verdict: if bell.strong_form_violated { Verdict::Pass } else { Verdict::Fail },
        },
    ];
    let passed = checks.iter().all(|c| c.verdict != Verdict::Fail);

    #[derive(Serialize)]
    struct Out<'a> {
        command: &'static str,
        seed: u64,
        passed: bool,
        config: &'a RunConfig,
        checks: Vec<CheckSummary>,
        catalog: audit::ViolationCatalog,
        bell_pairs: audit::BellPairReport,
    }
    let out = Out { command: "violations", seed: cfg.seed, passed, config: cfg, checks, catalog, bell_pairs: bell };
    Ok(Report { text: json(&out)?, passed })
}

/// Default `|α|` of the three-pair scenario, where `4|αβ|²` is largest.
pub const GHZ_ALPHA: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn default_alpha(command: &str) -> AlphaSpec {
    match command {
        "sweep" | "audit" => AlphaSpec::Sweep(Default::default()),
        "eq10" => AlphaSpec::Scalar(GHZ_ALPHA),
        _ => AlphaSpec::Scalar(REFERENCE_ALPHA),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_spreads_over_grid() {
        let g: Vec<f64> = (0..11).map(f64::from).collect();
        assert_eq!(sample(&g, 3), vec![0.0, 5.0, 10.0]);
        assert_eq!(sample(&g, 2), vec![0.0, 10.0]);
        assert_eq!(sample(&g, 0), Vec::<f64>::new());
        assert_eq!(sample(&g, 11), g);
    }
}

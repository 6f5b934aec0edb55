//! Run configuration: defaults, an optional TOML file and command-line flags,
//! layered in that order.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use monogamy_lab::audit::{AlphaSweep, KappaGrid, Spacing};
use monogamy_lab::roof::RoofConfig;
use monogamy_lab::tolerances;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `1/√10`, the reference trajectory amplitude.
pub const REFERENCE_ALPHA: f64 = 0.316_227_766_016_837_94;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Scalar `|α|` or a sweep over it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaSpec {
    Scalar(f64),
    Sweep(AlphaSweep),
}

impl AlphaSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            AlphaSpec::Scalar(a) => vec![*a],
            AlphaSpec::Sweep(s) => s.points(),
        }
    }
}

/// Parses `min:max:count`.
pub fn parse_sweep(text: &str) -> Result<AlphaSweep, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [min, max, count] = parts[..] else {
        return Err(format!("expected min:max:count, got `{text}`"));
    };
    let num = |s: &str| f64::from_str(s.trim()).map_err(|_| format!("`{s}` is not a number"));
    let count = usize::from_str(count.trim()).map_err(|_| format!("`{count}` is not a count"))?;
    Ok(AlphaSweep { min: num(min)?, max: num(max)?, count })
}

/// Snapshot of the library tolerances, echoed into JSON reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToleranceRecord {
    pub hermitian: f64,
    pub trace: f64,
    pub norm: f64,
    pub psd_clamp: f64,
    pub jacobi_offdiag: f64,
    pub jacobi_max_sweeps: usize,
    pub rank: f64,
    pub roof_zero: f64,
}

impl Default for ToleranceRecord {
    fn default() -> Self {
        Self {
            hermitian: tolerances::HERMITIAN_TOL,
            trace: tolerances::TRACE_TOL,
            norm: tolerances::NORM_TOL,
            psd_clamp: tolerances::PSD_CLAMP_TOL,
            jacobi_offdiag: tolerances::JACOBI_OFFDIAG_TOL,
            jacobi_max_sweeps: tolerances::JACOBI_MAX_SWEEPS,
            rank: tolerances::RANK_TOL,
            roof_zero: tolerances::ROOF_ZERO,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// Fully resolved configuration for one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub alpha: AlphaSpec,
    pub kappa_t_grid: KappaGrid,
    pub tolerances: ToleranceRecord,
    pub seed: u64,
    pub roof: RoofConfig,
    pub output: OutputSpec,
    /// Violation search sample count.
    pub trials: usize,
    /// Coarse grid resolution of the extremum search.
    pub resolution: usize,
    /// Adds the three-pair section to `audit`.
    pub three_pair: bool,
    /// Grid points at which `audit` runs convex-roof checks.
    pub roof_samples: usize,
}

/// `alpha` as written in a config file: a number, a `min:max:count` string or a table.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum AlphaValue {
    Scalar(f64),
    Text(String),
    Sweep(AlphaSweep),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridLayer {
    min: Option<f64>,
    max: Option<f64>,
    count: Option<usize>,
    spacing: Option<Spacing>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoofLayer {
    restarts: Option<usize>,
    max_decomposition: Option<usize>,
    max_iterations: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputLayer {
    path: Option<PathBuf>,
    format: Option<Format>,
}

/// Every setting optional; one instance per source.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    alpha: Option<AlphaValue>,
    #[serde(default)]
    kappa_t_grid: GridLayer,
    seed: Option<u64>,
    #[serde(default)]
    roof: RoofLayer,
    #[serde(default)]
    output: OutputLayer,
    trials: Option<usize>,
    resolution: Option<usize>,
    three_pair: Option<bool>,
    roof_samples: Option<usize>,
}

impl Layer {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config file: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_flags(flags: &crate::Flags) -> Self {
        let alpha = match (flags.alpha, &flags.alpha_sweep) {
            (_, Some(s)) => Some(AlphaValue::Sweep(*s)),
            (Some(a), None) => Some(AlphaValue::Scalar(a)),
            (None, None) => None,
        };
        Self {
            alpha,
            kappa_t_grid: GridLayer { min: flags.tmin, max: flags.tmax, count: flags.tcount, spacing: flags.spacing },
            seed: flags.seed,
            roof: RoofLayer { restarts: flags.restarts, max_decomposition: None, max_iterations: None },
            output: OutputLayer { path: flags.out.clone(), format: flags.format },
            trials: flags.trials,
            resolution: flags.resolution,
            three_pair: flags.three_pair.then_some(true),
            roof_samples: flags.roof_samples,
        }
    }

    /// Values set in `self` win over `lower`.
    pub fn over(self, lower: Layer) -> Layer {
        Layer {
            alpha: self.alpha.or(lower.alpha),
            kappa_t_grid: GridLayer {
                min: self.kappa_t_grid.min.or(lower.kappa_t_grid.min),
                max: self.kappa_t_grid.max.or(lower.kappa_t_grid.max),
                count: self.kappa_t_grid.count.or(lower.kappa_t_grid.count),
                spacing: self.kappa_t_grid.spacing.or(lower.kappa_t_grid.spacing),
            },
            seed: self.seed.or(lower.seed),
            roof: RoofLayer {
                restarts: self.roof.restarts.or(lower.roof.restarts),
                max_decomposition: self.roof.max_decomposition.or(lower.roof.max_decomposition),
                max_iterations: self.roof.max_iterations.or(lower.roof.max_iterations),
            },
            output: OutputLayer {
                path: self.output.path.or(lower.output.path),
                format: self.output.format.or(lower.output.format),
            },
            trials: self.trials.or(lower.trials),
            resolution: self.resolution.or(lower.resolution),
            three_pair: self.three_pair.or(lower.three_pair),
            roof_samples: self.roof_samples.or(lower.roof_samples),
        }
    }
}

/// Per-command fallbacks used where no layer sets a value.
#[derive(Clone, Debug)]
pub struct Defaults {
    pub alpha: AlphaSpec,
    pub kappa_t_grid: KappaGrid,
    pub format: Format,
}

impl RunConfig {
    pub fn resolve(layer: Layer, defaults: Defaults) -> Result<Self, CliError> {
        let alpha = match layer.alpha {
            None => defaults.alpha,
            Some(AlphaValue::Scalar(a)) => AlphaSpec::Scalar(a),
            Some(AlphaValue::Sweep(s)) => AlphaSpec::Sweep(s),
            Some(AlphaValue::Text(t)) => AlphaSpec::Sweep(parse_sweep(&t).map_err(CliError::Usage)?),
        };
        match alpha {
            AlphaSpec::Scalar(a) if !(a > 0.0 && a < 1.0) => {
                return Err(CliError::Usage(format!("alpha must lie in (0, 1), got {a}")));
            }
            AlphaSpec::Sweep(s) => s.validate().map_err(|e| CliError::Usage(e.to_string()))?,
            _ => {}
        }
        let d = defaults.kappa_t_grid;
        let g = layer.kappa_t_grid;
        let kappa_t_grid = KappaGrid {
            min: g.min.unwrap_or(d.min),
            max: g.max.unwrap_or(d.max),
            count: g.count.unwrap_or(d.count),
            spacing: g.spacing.unwrap_or(d.spacing),
        };
        kappa_t_grid.validate().map_err(|e| CliError::Usage(e.to_string()))?;

        let seed = layer.seed.unwrap_or(0);
        let mut roof = RoofConfig { seed, ..RoofConfig::default() };
        if let Some(r) = layer.roof.restarts {
            roof.restarts = r;
        }
        if let Some(m) = layer.roof.max_decomposition {
            if m == 0 {
                return Err(CliError::Usage("roof.max_decomposition must be positive".into()));
            }
            roof.max_decomposition = m;
        }
        if let Some(i) = layer.roof.max_iterations {
            roof.search.max_iterations = i;
        }
        let resolution = layer.resolution.unwrap_or(256);
        if resolution < 32 {
            return Err(CliError::Usage(format!("resolution must be at least 32, got {resolution}")));
        }
        Ok(Self {
            alpha,
            kappa_t_grid,
            tolerances: ToleranceRecord::default(),
            seed,
            roof,
            output: OutputSpec { path: layer.output.path, format: layer.output.format.unwrap_or(defaults.format) },
            trials: layer.trials.unwrap_or(10_000),
            resolution,
            three_pair: layer.three_pair.unwrap_or(false),
            roof_samples: layer.roof_samples.unwrap_or(3),
        })
    }
}

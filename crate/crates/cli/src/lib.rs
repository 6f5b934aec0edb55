//! Command-line front end for `monogamy-lab`.
//!
//! Every subcommand resolves a [`RunConfig`] (defaults, then `--config` TOML,
//! then flags), runs one scenario and writes CSV or JSON to `--out` or stdout.
//!
//! ```
//! let mut out = Vec::new();
//! let mut err = Vec::new();
//! let code = monogamy_lab_cli::run(
//!     ["monogamy-lab", "trajectory", "--alpha", "0.5", "--tcount", "3", "--spacing", "linear"],
//!     &mut out,
//!     &mut err,
//! );
//! assert_eq!(code, 0);
//! let text = String::from_utf8(out).unwrap();
//! assert!(text.starts_with("kappa_t,c2_c1c2,"));
//! assert_eq!(text.lines().count(), 4);
//! ```

pub mod commands;
pub mod config;
mod error;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use monogamy_lab::audit::{AlphaSweep, KappaGrid, Spacing};

pub use commands::Report;
pub use config::{AlphaSpec, Format, Layer, RunConfig};
pub use error::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable capping worker threads (`0` = one per core).
pub const THREADS_ENV: &str = "MONOGAMY_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "monogamy-lab",
    version,
    about = "Entanglement monogamy of cavity-reservoir pairs under amplitude damping"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pairwise concurrences, block tangle and residual along κt for one |α|
    Trajectory(Flags),
    /// Residual entanglement over an (|α|, κt) grid
    Sweep(Flags),
    /// Refined maximum of the residual entanglement
    Extremum(Flags),
    /// Monogamy and conservation checks with convex-roof samples
    Audit(Flags),
    /// Three-tangle bound of the three-pair scenario
    Eq10(Flags),
    /// Random-state search for violations of the pairwise monogamy relation
    Violations(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Trajectory(_) => "trajectory",
            Command::Sweep(_) => "sweep",
            Command::Extremum(_) => "extremum",
            Command::Audit(_) => "audit",
            Command::Eq10(_) => "eq10",
            Command::Violations(_) => "violations",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Command::Trajectory(f)
            | Command::Sweep(f)
            | Command::Extremum(f)
            | Command::Audit(f)
            | Command::Eq10(f)
            | Command::Violations(f) => f,
        }
    }

    fn defaults(&self) -> config::Defaults {
        let (kappa_t_grid, format) = match self {
            Command::Eq10(_) => (KappaGrid { min: 0.0, max: 5.0, count: 10, spacing: Spacing::Linear }, Format::Json),
            Command::Trajectory(_) | Command::Sweep(_) => (KappaGrid::default(), Format::Csv),
            _ => (KappaGrid::default(), Format::Json),
        };
        config::Defaults { alpha: commands::default_alpha(self.name()), kappa_t_grid, format }
    }
}

#[derive(Debug, Default, Clone, Args)]
pub struct Flags {
    /// TOML file with run settings; flags take precedence
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Initial amplitude |α| in (0, 1)
    #[arg(long, conflicts_with = "alpha_sweep")]
    pub alpha: Option<f64>,
    /// Sweep of |α| as min:max:count
    #[arg(long, value_name = "MIN:MAX:COUNT", value_parser = config::parse_sweep)]
    pub alpha_sweep: Option<AlphaSweep>,
    /// Smallest κt of the grid
    #[arg(long)]
    pub tmin: Option<f64>,
    /// Largest κt of the grid
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Number of κt grid points
    #[arg(long)]
    pub tcount: Option<usize>,
    /// κt grid spacing
    #[arg(long, value_parser = parse_spacing)]
    pub spacing: Option<Spacing>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random restarts per decomposition size in convex-roof searches
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Output file (stdout when absent)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Samples drawn by `violations`
    #[arg(long)]
    pub trials: Option<usize>,
    /// Coarse grid resolution of `extremum`
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Include the three-pair section in `audit`
    #[arg(long)]
    pub three_pair: bool,
    /// κt points with convex-roof checks in `audit`
    #[arg(long)]
    pub roof_samples: Option<usize>,
}

fn parse_spacing(s: &str) -> Result<Spacing, String> {
    match s {
        "linear" => Ok(Spacing::Linear),
        "log" => Ok(Spacing::Log),
        _ => Err(format!("expected `linear` or `log`, got `{s}`")),
    }
}

/// Builds the configuration `command` would run with.
pub fn resolve(command: &Command) -> Result<RunConfig, CliError> {
    let flags = command.flags();
    let file = match &flags.config {
        Some(path) => Layer::from_file(path)?,
        None => Layer::default(),
    };
    RunConfig::resolve(Layer::from_flags(flags).over(file), command.defaults())
}

/// Runs `command` and renders its output without writing it anywhere.
pub fn execute(command: &Command) -> Result<(RunConfig, Report), CliError> {
    let cfg = resolve(command)?;
    let report = match command {
        Command::Trajectory(_) => commands::trajectory(&cfg),
        Command::Sweep(_) => commands::sweep(&cfg),
        Command::Extremum(_) => commands::extremum(&cfg),
        Command::Audit(_) => commands::run_audit(&cfg),
        Command::Eq10(_) => commands::eq10(&cfg),
        Command::Violations(_) => commands::violations(&cfg),
    }?;
    Ok((cfg, report))
}

/// Caps the global worker pool from [`THREADS_ENV`].
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a nonnegative integer, got `{value}`")))?;
    // A pool already built by an earlier call keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match configure_threads().and_then(|_| execute(&cli.command)).and_then(|(cfg, report)| emit(&cfg, report, stdout)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cfg: &RunConfig, report: Report, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match &cfg.output.path {
        Some(path) => std::fs::write(path, report.text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => stdout.write_all(report.text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_FAIL })
}

//! Command-line front end: `curve` (CSV), `validate` (oracle report) and
//! `critical` (JSON), plus the figure presets.
//!
//! Exit codes: 0 success, 1 bad arguments, 2 numerical failure or oracle
//! mismatch.

mod commands;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bounds::{BoundKind, RhoMode};
use crate::config::{Caps, Tolerances};
use crate::family::{SpaceFamily, SpaceKind};

pub use commands::{cmd_critical, cmd_curve, cmd_validate, CriticalReport, ValidateReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) | CliError::Mismatch(_) => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "l1gv", version, about = "GV-type rate bounds in the L1 metric, with exact counting oracles")]
pub struct Cli {
    /// Shorthand for `curve --preset …` to stdout.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rate curves as CSV.
    Curve(CurveArgs),
    /// Brute force vs DP vs series pair counts.
    Validate(ValidateArgs),
    /// One critical point as JSON.
    Critical(CriticalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
}

impl Preset {
    /// The exact flag set each preset stands for.
    pub fn flags(self) -> &'static [&'static str] {
        match self {
            Preset::Fig1 => &["--space", "std-simplex", "--rho", "2", "--bounds", "gv,gvmr,sp,cw", "--delta", "0:2:0.01"],
            Preset::Fig2 => &["--space", "pos-simplex", "--opt-rho", "--bounds", "gv,gvmr,kk", "--delta", "0:0.6:0.005"],
            Preset::Fig3 => &["--space", "hypercube", "--q", "4", "--bounds", "gv,gvmr,lee", "--delta", "0:1.3:0.005"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// std-simplex, std-simplex-zeros, pos-simplex, pos-simplex-ones, inv-simplex, hypercube, hypercube-zeros
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub q: Option<u32>,
}

impl FamilyArgs {
    pub fn kind(&self) -> Result<SpaceKind, CliError> {
        let s = self.space.as_deref().ok_or_else(|| usage("--space is required"))?;
        SpaceKind::from_cli_name(s).ok_or_else(|| usage(format!("unknown space '{s}'")))
    }

    /// Builds and validates the family. With `rho_optional`, a missing
    /// `--rho` becomes a placeholder (for `--opt-rho`).
    pub fn family(&self, rho_optional: bool) -> Result<SpaceFamily, CliError> {
        let kind = self.kind()?;
        let rho = || match (self.rho, rho_optional) {
            (Some(r), _) => Ok(r),
            (None, true) => Ok(0.5),
            (None, false) => Err(usage(format!("--rho is required for {}", kind.cli_name()))),
        };
        let tau = || self.tau.ok_or_else(|| usage(format!("--tau is required for {}", kind.cli_name())));
        let q = || self.q.ok_or_else(|| usage(format!("--q is required for {}", kind.cli_name())));
        let fam = match kind {
            SpaceKind::StdSimplex => SpaceFamily::StdSimplex { rho: rho()? },
            SpaceKind::StdSimplexZeros => SpaceFamily::StdSimplexZeros { rho: rho()?, tau: tau()? },
            SpaceKind::PosSimplex => SpaceFamily::PosSimplex { rho: rho()? },
            SpaceKind::PosSimplexOnes => SpaceFamily::PosSimplexOnes { rho: rho()?, tau: tau()? },
            SpaceKind::InvSimplex => SpaceFamily::InvSimplex { rho: rho()? },
            SpaceKind::Hypercube => SpaceFamily::Hypercube { q: q()? },
            SpaceKind::HypercubeZeros => SpaceFamily::HypercubeZeros { q: q()?, tau: tau()? },
        };
        fam.validate().map_err(|e| usage(e.to_string()))?;
        Ok(fam)
    }
}

#[derive(Args, Debug, Clone)]
pub struct ToleranceArgs {
    #[arg(long, default_value_t = Tolerances::default().newton)]
    pub tol_newton: f64,
    #[arg(long, default_value_t = Tolerances::default().accept)]
    pub tol_accept: f64,
    #[arg(long, default_value_t = Tolerances::default().root_polish)]
    pub tol_root_polish: f64,
    #[arg(long, default_value_t = Tolerances::default().scan_step)]
    pub scan_step: f64,
    #[arg(long, default_value_t = Tolerances::default().max_newton_iters)]
    pub max_newton_iters: usize,
}

impl ToleranceArgs {
    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        let t = Tolerances {
            newton: self.tol_newton,
            accept: self.tol_accept,
            root_polish: self.tol_root_polish,
            scan_step: self.scan_step,
            max_newton_iters: self.max_newton_iters,
        };
        let pos = [t.newton, t.accept, t.root_polish, t.scan_step];
        if pos.iter().any(|x| !(x.is_finite() && *x > 0.0)) || t.max_newton_iters == 0 {
            return Err(usage("tolerances must be positive"));
        }
        Ok(t)
    }
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[arg(long, value_enum, conflicts_with_all = ["space", "rho", "tau", "q", "opt_rho", "bounds", "delta"])]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Optimize ρ per δ (positive/inverted simplex).
    #[arg(long)]
    pub opt_rho: bool,
    /// Comma-separated: gv, gvmr, sp, cw, kk, lee, cap.
    #[arg(long)]
    pub bounds: Option<String>,
    /// δ grid as start:stop:step.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

impl CurveArgs {
    /// Replaces a preset with its flag set.
    pub fn expanded(&self) -> Result<CurveArgs, CliError> {
        let Some(p) = self.preset else { return Ok(self.clone()) };
        let mut argv: Vec<&str> = vec!["curve"];
        argv.extend_from_slice(p.flags());
        #[derive(Parser)]
        struct Wrap {
            #[command(flatten)]
            inner: CurveArgs,
        }
        let mut out = Wrap::try_parse_from(argv).map_err(|e| usage(e.to_string()))?.inner;
        out.output = self.output.clone();
        out.format = self.format;
        Ok(out)
    }
}

/// Validated curve request.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveConfig {
    pub family: SpaceFamily,
    pub mode: RhoMode,
    pub bounds: Vec<BoundKind>,
    pub grid: Vec<f64>,
}

impl CurveConfig {
    pub fn from_args(args: &CurveArgs) -> Result<CurveConfig, CliError> {
        let args = args.expanded()?;
        let mode = if args.opt_rho { RhoMode::Optimized } else { RhoMode::Fixed };
        let family = args.family.family(args.opt_rho)?;
        if args.opt_rho && !matches!(family.kind(), SpaceKind::PosSimplex | SpaceKind::InvSimplex) {
            return Err(usage("--opt-rho needs pos-simplex or inv-simplex"));
        }
        if args.opt_rho && args.family.rho.is_some() {
            return Err(usage("--opt-rho and --rho are exclusive"));
        }
        let list = args.bounds.as_deref().ok_or_else(|| usage("--bounds is required"))?;
        let mut bounds = Vec::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let b = BoundKind::from_cli_name(name).ok_or_else(|| usage(format!("unknown bound '{name}'")))?;
            if !b.applies_to(&family, mode) {
                return Err(usage(format!("bound '{name}' does not apply to {}", family.kind().cli_name())));
            }
            if !bounds.contains(&b) {
                bounds.push(b);
            }
        }
        if bounds.is_empty() {
            return Err(usage("--bounds is empty"));
        }
        let grid = format::parse_grid(args.delta.as_deref().ok_or_else(|| usage("--delta is required"))?)
            .map_err(CliError::Usage)?;
        Ok(CurveConfig { family, mode, bounds, grid })
    }
}

#[derive(Args, Debug, Clone)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Largest dimension `r` checked when `--rho` is absent (default `n`).
    #[arg(long)]
    pub r: Option<u32>,
    /// Largest constraint count `p` checked when `--tau` is absent.
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub n_min: u32,
    #[arg(long)]
    pub n_max: u32,
    #[arg(long, default_value_t = Caps::default().enumeration)]
    pub enum_cap: u64,
    #[arg(long, default_value_t = Caps::default().dp_n)]
    pub dp_cap: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub delta: f64,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn emit(text: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let command = match (cli.preset, cli.command) {
        (Some(_), Some(_)) => return Err(usage("--preset goes either before or inside 'curve', not with a subcommand")),
        (Some(p), None) => Command::Curve(CurveArgs {
            preset: Some(p),
            family: FamilyArgs::default(),
            opt_rho: false,
            bounds: None,
            delta: None,
            output: None,
            format: OutputFormat::Csv,
        }),
        (None, Some(c)) => c,
        (None, None) => return Err(usage("missing subcommand (curve, validate, critical) or --preset")),
    };
    match command {
        Command::Curve(args) => {
            let cfg = CurveConfig::from_args(&args)?;
            let fmt = args.format;
            if fmt == OutputFormat::Text {
                return Err(usage("curve writes csv or json"));
            }
            let text = cmd_curve(&cfg, fmt)?;
            emit(&text, args.output.as_ref(), stdout)
        }
        Command::Validate(args) => {
            let report = cmd_validate(&args)?;
            let text = match args.format {
                OutputFormat::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
                _ => report.to_text(),
            };
            emit(&text, args.output.as_ref(), stdout)?;
            if report.mismatches > 0 {
                return Err(CliError::Mismatch(format!("{} mismatching rows", report.mismatches)));
            }
            Ok(())
        }
        Command::Critical(args) => {
            let report = cmd_critical(&args)?;
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            emit(&text, args.output.as_ref(), stdout)
        }
    }
}

/// Parses `argv` (including the program name), runs, and returns the exit
/// code. Output goes to `stdout` unless `--output` is given; errors go to
/// stderr.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

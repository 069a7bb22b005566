//! Argument and config-file parsing into a validated [`RunConfig`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rydberg_jc::coherent::DEFAULT_TAIL_TOL;
use rydberg_jc::{FockCase, ModelParams, Truncation};
use serde::Deserialize;

use crate::error::CliError;
use crate::figures::FigureId;

pub const DEFAULT_T_START: f64 = 0.0;
pub const DEFAULT_T_END: f64 = 20.0;
pub const DEFAULT_T_POINTS: usize = 2000;
pub const DEFAULT_EIG_N: u32 = 10;

#[derive(Debug, Parser)]
#[command(name = "rydberg-jc", version, about = "Two Rydberg-blockaded atoms in a quantized field mode")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with default values; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Field frequency.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega_f: Option<f64>,

    /// Atomic transition frequency.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega_0: Option<f64>,

    /// Atom-field coupling.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,

    /// Detuning omega_f - omega_0; sets omega_f.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta: Option<f64>,

    /// Photon number (fock) or largest n listed (eig).
    #[arg(long, global = true)]
    pub n: Option<u32>,

    /// Mean photon number of a real coherent amplitude.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub n_bar: Option<f64>,

    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha_re: Option<f64>,

    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha_im: Option<f64>,

    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t_start: Option<f64>,

    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t_end: Option<f64>,

    #[arg(long, global = true)]
    pub t_points: Option<usize>,

    /// Neglected Poisson mass of the coherent field.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tail_tol: Option<f64>,

    /// Highest photon number kept by the full-space oracle.
    #[arg(long, global = true)]
    pub photon_cap: Option<usize>,

    /// Output file; stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Eigensystems of the blocks n = 0..=N.
    Eig,
    /// Evolution from a named initial state with n photons.
    Fock {
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
    },
    /// Atomic state and entanglement for a coherent field.
    Coherent {
        /// Use the full-space simulator instead of the series.
        #[arg(long)]
        oracle: bool,
        /// Coupling of atom b (oracle only).
        #[arg(long, allow_negative_numbers = true, requires = "oracle")]
        lambda_b: Option<f64>,
    },
    /// Runs every oracle cross-check.
    Verify {
        /// Multiplies every tolerance.
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
    },
    /// Writes a dataset with locked parameters.
    Figure { id: FigureId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum CaseArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "beta")]
    #[serde(rename = "beta")]
    Beta,
}

impl From<CaseArg> for FockCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::A => FockCase::A,
            CaseArg::B => FockCase::B,
            CaseArg::C => FockCase::C,
            CaseArg::Beta => FockCase::Beta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Config-file schema. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub params: FileParams,
    #[serde(default)]
    pub time: FileTime,
    #[serde(default)]
    pub field: FileField,
    #[serde(default)]
    pub truncation: FileTruncation,
    #[serde(default)]
    pub output: FileOutput,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileParams {
    pub omega_f: Option<f64>,
    pub omega_0: Option<f64>,
    pub lambda: Option<f64>,
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileTime {
    pub start: Option<f64>,
    pub end: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileField {
    pub case: Option<CaseArg>,
    pub n: Option<u32>,
    pub n_bar: Option<f64>,
    pub alpha_re: Option<f64>,
    pub alpha_im: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileTruncation {
    pub tail_tol: Option<f64>,
    pub photon_cap: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOutput {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    MeanPhotons(f64),
    Amplitude(Complex64),
}

impl FieldSpec {
    pub fn alpha(&self) -> Complex64 {
        match *self {
            FieldSpec::MeanPhotons(n_bar) => Complex64::from(n_bar.sqrt()),
            FieldSpec::Amplitude(a) => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Eig { n_max: u32 },
    Fock { case: FockCase, n: u32 },
    Coherent {
        field: FieldSpec,
        oracle: bool,
        lambda_b: Option<f64>,
    },
    Verify { tolerance_scale: f64 },
    Figure(FigureId),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl TimeGrid {
    pub fn validate(self) -> Result<Self, CliError> {
        if !self.start.is_finite() || !self.end.is_finite() {
            return Err(CliError::Usage("time bounds must be finite".into()));
        }
        if self.end <= self.start {
            return Err(CliError::Usage(format!(
                "t_end ({}) must exceed t_start ({})",
                self.end, self.start
            )));
        }
        if self.points < 2 {
            return Err(CliError::Usage("t_points must be at least 2".into()));
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub params: ModelParams,
    pub time: TimeGrid,
    pub output: OutputSpec,
    pub tail_tol: f64,
    pub photon_cap: Option<usize>,
}

impl RunConfig {
    pub fn truncation(&self) -> Result<Truncation, CliError> {
        Ok(Truncation::auto(self.tail_tol)?)
    }
}

/// Parses argv (including the program name) into a validated config.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ParseOutcome::Clap)?;
    let file = match &cli.common.config {
        Some(path) => FileConfig::load(path).map_err(ParseOutcome::Error)?,
        None => FileConfig::default(),
    };
    resolve(&cli.common, &cli.command, &file).map_err(ParseOutcome::Error)
}

/// Why [`parse_config`] did not yield a config.
#[derive(Debug)]
pub enum ParseOutcome {
    /// Includes `--help` and `--version`, which are not failures.
    Clap(clap::Error),
    Error(CliError),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn figure_locked(a: &CommonArgs, file: &FileConfig) -> Option<&'static str> {
    let flags = [
        (a.omega_f.is_some() || file.params.omega_f.is_some(), "omega_f"),
        (a.omega_0.is_some() || file.params.omega_0.is_some(), "omega_0"),
        (a.lambda.is_some() || file.params.lambda.is_some(), "lambda"),
        (a.delta.is_some() || file.params.delta.is_some(), "delta"),
        (a.n.is_some() || file.field.n.is_some(), "n"),
        (a.n_bar.is_some() || file.field.n_bar.is_some(), "n_bar"),
        (a.alpha_re.is_some() || file.field.alpha_re.is_some(), "alpha_re"),
        (a.alpha_im.is_some() || file.field.alpha_im.is_some(), "alpha_im"),
        (a.t_start.is_some() || file.time.start.is_some(), "t_start"),
        (a.t_end.is_some() || file.time.end.is_some(), "t_end"),
        (a.t_points.is_some() || file.time.points.is_some(), "t_points"),
        (a.tail_tol.is_some() || file.truncation.tail_tol.is_some(), "tail_tol"),
        (a.photon_cap.is_some() || file.truncation.photon_cap.is_some(), "photon_cap"),
        (file.field.case.is_some(), "case"),
    ];
    flags.iter().find(|(set, _)| *set).map(|(_, name)| *name)
}

fn resolve_params(a: &CommonArgs, file: &FileConfig) -> Result<ModelParams, CliError> {
    if a.omega_f.is_some() && a.delta.is_some() {
        return Err(usage("--omega-f and --delta are mutually exclusive"));
    }
    if file.params.omega_f.is_some() && file.params.delta.is_some() {
        return Err(usage("config file sets both omega_f and delta"));
    }
    let omega_0 = a.omega_0.or(file.params.omega_0).unwrap_or(1.0);
    let lambda = a.lambda.or(file.params.lambda).unwrap_or(1.0);
    // A flag for either frequency replaces both file values.
    let (omega_f, delta) = if a.omega_f.is_some() || a.delta.is_some() {
        (a.omega_f, a.delta)
    } else {
        (file.params.omega_f, file.params.delta)
    };
    let p = match (omega_f, delta) {
        (_, Some(d)) => ModelParams::with_detuning(omega_0, lambda, d),
        (Some(f), None) => ModelParams::new(f, omega_0, lambda),
        (None, None) => ModelParams::new(omega_0, omega_0, lambda),
    };
    Ok(p?)
}

fn resolve_field(a: &CommonArgs, file: &FileConfig) -> Result<FieldSpec, CliError> {
    let flag_alpha = a.alpha_re.is_some() || a.alpha_im.is_some();
    if a.n_bar.is_some() && flag_alpha {
        return Err(usage("--n-bar conflicts with --alpha-re/--alpha-im"));
    }
    let (n_bar, re, im) = if a.n_bar.is_some() || flag_alpha {
        (a.n_bar, a.alpha_re, a.alpha_im)
    } else {
        (file.field.n_bar, file.field.alpha_re, file.field.alpha_im)
    };
    match (n_bar, re, im) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            Err(usage("config file sets both n_bar and alpha"))
        }
        (Some(nb), None, None) => {
            if !(nb.is_finite() && nb >= 0.0) {
                return Err(usage(format!("n_bar must be finite and non-negative, got {nb}")));
            }
            Ok(FieldSpec::MeanPhotons(nb))
        }
        (None, None, None) => Err(usage("coherent runs need --n-bar or --alpha-re/--alpha-im")),
        (None, re, im) => {
            let alpha = Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0));
            if !(alpha.re.is_finite() && alpha.im.is_finite()) {
                return Err(usage("alpha must be finite"));
            }
            Ok(FieldSpec::Amplitude(alpha))
        }
    }
}

/// Merges flags over file values and validates the result.
pub fn resolve(a: &CommonArgs, cmd: &Command, file: &FileConfig) -> Result<RunConfig, CliError> {
    let output = OutputSpec {
        path: a.out.clone().or_else(|| file.output.path.clone()),
        format: a.format.or(file.output.format).unwrap_or_default(),
    };
    if let Command::Figure { id } = cmd {
        if let Some(name) = figure_locked(a, file) {
            return Err(usage(format!("figure presets are locked; remove '{name}'")));
        }
        let p = ModelParams::resonant(1.0)?;
        return Ok(RunConfig {
            scenario: Scenario::Figure(*id),
            params: p,
            time: TimeGrid {
                start: DEFAULT_T_START,
                end: DEFAULT_T_END,
                points: DEFAULT_T_POINTS,
            },
            output,
            tail_tol: DEFAULT_TAIL_TOL,
            photon_cap: None,
        });
    }

    let params = resolve_params(a, file)?;
    let time = TimeGrid {
        start: a.t_start.or(file.time.start).unwrap_or(DEFAULT_T_START),
        end: a.t_end.or(file.time.end).unwrap_or(DEFAULT_T_END),
        points: a.t_points.or(file.time.points).unwrap_or(DEFAULT_T_POINTS),
    }
    .validate()?;
    let tail_tol = a.tail_tol.or(file.truncation.tail_tol).unwrap_or(DEFAULT_TAIL_TOL);
    Truncation::auto(tail_tol)?;
    let photon_cap = a.photon_cap.or(file.truncation.photon_cap);
    let n = a.n.or(file.field.n);

    let scenario = match cmd {
        Command::Eig => Scenario::Eig {
            n_max: n.unwrap_or(DEFAULT_EIG_N),
        },
        Command::Fock { case } => {
            let case = case
                .or(file.field.case)
                .ok_or_else(|| usage("fock needs --case A|B|C|beta"))?;
            Scenario::Fock {
                case: case.into(),
                n: n.unwrap_or(0),
            }
        }
        Command::Coherent { oracle, lambda_b } => {
            if let Some(lb) = lambda_b {
                if !lb.is_finite() {
                    return Err(usage("lambda_b must be finite"));
                }
            }
            if photon_cap.is_some() && !oracle {
                return Err(usage("--photon-cap only applies with --oracle"));
            }
            Scenario::Coherent {
                field: resolve_field(a, file)?,
                oracle: *oracle,
                lambda_b: *lambda_b,
            }
        }
        Command::Verify { tolerance_scale } => {
            if !(tolerance_scale.is_finite() && *tolerance_scale >= 0.0) {
                return Err(usage("tolerance_scale must be finite and non-negative"));
            }
            Scenario::Verify {
                tolerance_scale: *tolerance_scale,
            }
        }
        Command::Figure { .. } => unreachable!("handled above"),
    };

    Ok(RunConfig {
        scenario,
        params,
        time,
        output,
        tail_tol,
        photon_cap,
    })
}

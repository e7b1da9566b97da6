//! Command-line surface: `generate`, `spectrum`, `verify` and `error-curve`.
//!
//! Exit codes: 0 success, 2 bad arguments, 3 numeric convergence failure,
//! 4 verification failure, 5 I/O failure.

mod commands;
pub mod fixtures;
mod render;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::numerics::ToleranceConfig;

pub use render::{OutputFormat, RunManifest};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;
pub const EXIT_IO: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "magic-spectra", version, about = "Spectra of MATLAB-style magic squares")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print magic(n).
    Generate(GenerateArgs),
    /// Computed and/or closed-form eigenvalues of magic(n).
    Spectrum(SpectrumArgs),
    /// Check the structural identities and eigenvalue bounds over a range of orders.
    Verify(VerifyArgs),
    /// Largest relative eigenvalue error e_n for each odd order in a range.
    ErrorCurve(ErrorCurveArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format (default: csv for error-curve, plain otherwise).
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write to this file instead of stdout; a `.manifest.json` is written alongside.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMode {
    Numeric,
    Approx,
    Both,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = SpectrumMode::Both)]
    pub mode: SpectrumMode,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityFilter {
    Odd,
    SinglyEven,
    DoublyEven,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "from", default_value_t = 3)]
    pub from: usize,
    #[arg(long = "to", default_value_t = 50)]
    pub to: usize,
    /// Only verify orders of this parity class.
    #[arg(long, value_enum)]
    pub parity: Option<ParityFilter>,
    /// Stop starting new orders once this much wall time has elapsed.
    #[arg(long, default_value_t = 300.0)]
    pub max_seconds: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ErrorCurveArgs {
    #[arg(long = "from", default_value_t = 3)]
    pub from: usize,
    #[arg(long = "to", default_value_t = 101)]
    pub to: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence { .. } => EXIT_CONVERGENCE,
            Error::UnsupportedOrder(_)
            | Error::Parity { .. }
            | Error::InvalidDimension(_)
            | Error::InvalidStride { .. }
            | Error::InvalidConfig(_) => EXIT_USAGE,
            Error::Singular { .. }
            | Error::DegenerateSpectrum { .. }
            | Error::Consistency(_)
            | Error::Classification { .. } => EXIT_VERIFY,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Rendered command output plus the exit code it should end with.
struct Finished {
    text: String,
    manifest: RunManifest,
    code: u8,
}

/// The command-line spelling of an enum argument.
fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn dispatch(cli: &Cli, cfg: &ToleranceConfig) -> Result<(Finished, Option<PathBuf>), CliError> {
    let (output, manifest, out, code) = match &cli.command {
        Command::Generate(a) => {
            let fmt = a.output.format.unwrap_or(OutputFormat::Plain);
            let m = RunManifest::new("generate", params(&[("n", a.n.to_string()), ("format", value_name(fmt))]), cfg);
            (commands::generate(a.n)?.render(fmt, &m), m, &a.output.out, EXIT_OK)
        }
        Command::Spectrum(a) => {
            let fmt = a.output.format.unwrap_or(OutputFormat::Plain);
            let m = RunManifest::new(
                "spectrum",
                params(&[
                    ("n", a.n.to_string()),
                    ("mode", value_name(a.mode)),
                    ("format", value_name(fmt)),
                ]),
                cfg,
            );
            (commands::spectrum(a.n, a.mode, cfg)?.render(fmt, &m), m, &a.output.out, EXIT_OK)
        }
        Command::Verify(a) => {
            if a.from < 3 || a.from > a.to {
                return Err(CliError::usage(format!("verify needs 3 <= --from <= --to, got {}..{}", a.from, a.to)));
            }
            if !(a.max_seconds > 0.0) {
                return Err(CliError::usage("--max-seconds must be positive"));
            }
            let fmt = a.output.format.unwrap_or(OutputFormat::Plain);
            let m = RunManifest::new(
                "verify",
                params(&[
                    ("from", a.from.to_string()),
                    ("to", a.to.to_string()),
                    ("parity", a.parity.map(value_name).unwrap_or_else(|| "all".into())),
                    ("max_seconds", a.max_seconds.to_string()),
                    ("format", value_name(fmt)),
                ]),
                cfg,
            );
            let (output, ok) = commands::verify(a.from, a.to, a.parity, a.max_seconds, cfg)?;
            let code = if ok { EXIT_OK } else { EXIT_VERIFY };
            (output.render(fmt, &m), m, &a.output.out, code)
        }
        Command::ErrorCurve(a) => {
            if a.from % 2 == 0 || a.to % 2 == 0 || a.from < 3 || a.from > a.to {
                return Err(CliError::usage(format!(
                    "error-curve needs odd 3 <= --from <= --to, got {}..{}",
                    a.from, a.to
                )));
            }
            let fmt = a.output.format.unwrap_or(OutputFormat::Csv);
            let m = RunManifest::new(
                "error-curve",
                params(&[("from", a.from.to_string()), ("to", a.to.to_string()), ("format", value_name(fmt))]),
                cfg,
            );
            (commands::error_curve(a.from, a.to, cfg)?.render(fmt, &m), m, &a.output.out, EXIT_OK)
        }
    };
    Ok((
        Finished {
            text: output,
            manifest,
            code,
        },
        out.clone(),
    ))
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("cannot write {}: {e}", path.display()),
    }
}

/// `<out>.manifest.json` next to an output file.
pub fn manifest_path(out: &std::path::Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Parses `args` (program name first), runs the command and returns its exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = ToleranceConfig::from_env()
        .map_err(CliError::from)
        .and_then(|cfg| dispatch(&cli, &cfg))
        .and_then(|(done, out)| {
            match out {
                Some(path) => {
                    std::fs::write(&path, &done.text).map_err(|e| io_error(&path, e))?;
                    let manifest = manifest_path(&path);
                    let mut json = serde_json::to_string_pretty(&done.manifest).expect("manifest serializes");
                    json.push('\n');
                    std::fs::write(&manifest, json).map_err(|e| io_error(&manifest, e))?;
                    let _ = writeln!(stderr, "wrote {}", path.display());
                }
                None => {
                    stdout.write_all(done.text.as_bytes()).map_err(|e| CliError {
                        code: EXIT_IO,
                        message: format!("cannot write to stdout: {e}"),
                    })?;
                }
            }
            Ok(done.code)
        });
    match result {
        Ok(code) => {
            if code == EXIT_VERIFY {
                let _ = writeln!(stderr, "verification failed");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

pub fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}

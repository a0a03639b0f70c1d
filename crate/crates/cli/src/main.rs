use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use emdetect::commands::{self, Overrides};
use emdetect::config::{parse_zeta, Format};
use emdetect::CliError;
use emdetect_core::analysis::{DetectionMode, ScanPlane};
use serde::Serialize;

/// Dipole-pair interference as seen by electric-magnetic photodetectors.
#[derive(Parser)]
#[command(name = "emdetect", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a plane and export the probabilities (CSV or JSON).
    Scan(Common),
    /// Report visibility, extrema and interference zeros of a plane scan.
    Visibility(Common),
    /// Compare the Fock-space expectation with the classical formula.
    QuantumCheck(Common),
    /// Integrate the detection probability over the sphere at two resolutions.
    Power(Common),
    /// List the built-in configurations.
    Presets,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in configuration (see `presets`).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Mixing parameter as RE or RE,IM.
    #[arg(long, value_name = "RE[,IM]", allow_hyphen_values = true)]
    zeta: Option<String>,
    /// scattering | absorbed-coherent | absorbed-particle
    #[arg(long)]
    mode: Option<DetectionMode>,
    /// xy | xz
    #[arg(long)]
    plane: Option<ScanPlane>,
    #[arg(long)]
    samples: Option<usize>,
    /// Export path; without it the export goes to stdout and the summary to stderr.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// csv | json
    #[arg(long)]
    format: Option<Format>,
}

impl Common {
    fn load(&self) -> Result<emdetect::config::RunConfig, CliError> {
        let overrides = Overrides {
            zeta: self.zeta.as_deref().map(parse_zeta).transpose()?,
            mode: self.mode,
            plane: self.plane,
            samples: self.samples,
            out: self.out.clone(),
            format: self.format,
        };
        commands::load_config(self.config.as_deref(), self.preset.as_deref(), &overrides)
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: String,
    kind: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<&'a str>,
}

fn print_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let line = serde_json::to_string(value)?;
    writeln!(out, "{line}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let stdout = &mut io::stdout().lock();
    match cli.command {
        Command::Scan(args) => {
            let config = args.load()?;
            let summary = commands::cmd_scan(&config, stdout)?;
            if config.output.path.is_some() {
                print_line(stdout, &summary)?;
            } else {
                print_line(&mut io::stderr().lock(), &summary)?;
            }
            Ok(true)
        }
        Command::Visibility(args) => {
            print_line(stdout, &commands::cmd_visibility(&args.load()?)?)?;
            Ok(true)
        }
        Command::QuantumCheck(args) => {
            let report = commands::cmd_quantum_check(&args.load()?)?;
            print_line(stdout, &report)?;
            Ok(report.pass)
        }
        Command::Power(args) => {
            let report = commands::cmd_power(&args.load()?)?;
            print_line(stdout, &report)?;
            Ok(report.converged)
        }
        Command::Presets => {
            print_line(stdout, &commands::cmd_presets())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let report = ErrorReport {
                error: e.to_string(),
                kind: e.kind(),
                path: e.path(),
            };
            let _ = print_line(&mut io::stderr().lock(), &report);
            ExitCode::from(2)
        }
    }
}

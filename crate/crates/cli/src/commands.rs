//! The command implementations behind the CLI. Each returns a serializable
//! report; `main` prints it as one JSON line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use emdetect_core::analysis::{count_zeros, visibility, AngularScan, DetectionMode, ScanPlane, DEFAULT_ZERO_TOLERANCE};
use emdetect_core::math::build_sphere_grid;
use emdetect_core::oracle::{check_against_classical, MAX_MODES};
use serde::Serialize;

use crate::config::{parse_config, preset, ComplexPair, Format, RunConfig, PRESETS};
use crate::export::{normalization_scale, ScanExport};
use crate::parallel::{scan_plane_parallel, total_power_parallel};
use crate::CliError;

/// Quantum and classical predictions must agree to this absolute tolerance.
pub const ORACLE_TOLERANCE: f64 = 1e-10;
pub const ORACLE_GRID: (usize, usize) = (16, 32);
/// Allowed change of the total power between the two quadrature grids.
pub const POWER_TOLERANCE: f64 = 1e-8;
pub const POWER_GRIDS: [(usize, usize); 2] = [(64, 128), (128, 256)];

/// Command-line overrides applied on top of a config file or preset.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub zeta: Option<ComplexPair>,
    pub mode: Option<DetectionMode>,
    pub plane: Option<ScanPlane>,
    pub samples: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Overrides {
    pub fn apply(&self, config: &mut RunConfig) {
        if let Some(z) = self.zeta {
            config.detector.zeta = z;
        }
        if let Some(m) = self.mode {
            config.scan.mode = m;
        }
        if let Some(p) = self.plane {
            config.scan.plane = p;
        }
        if let Some(n) = self.samples {
            config.scan.samples = n;
        }
        if let Some(out) = &self.out {
            config.output.path = Some(out.to_string_lossy().into_owned());
        }
        if let Some(f) = self.format {
            config.output.format = f;
        }
    }
}

/// Reads the config file or preset, applies overrides and re-validates.
pub fn load_config(
    path: Option<&Path>,
    preset_name: Option<&str>,
    overrides: &Overrides,
) -> Result<RunConfig, CliError> {
    let mut config = match (path, preset_name) {
        (Some(p), _) => {
            let text = fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            parse_config(&text)?
        }
        (None, Some(name)) => preset(name)?,
        (None, None) => return Err(CliError::MissingConfig),
    };
    overrides.apply(&mut config);
    config.validate()?;
    Ok(config)
}

pub fn compute_scan(config: &RunConfig) -> Result<AngularScan, CliError> {
    Ok(scan_plane_parallel(
        &config.field_config()?,
        &config.detector_spec()?,
        config.detector.frame,
        config.scan.mode,
        config.scan.plane,
        config.scan.samples,
    )?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub command: &'static str,
    pub plane: &'static str,
    pub mode: &'static str,
    pub zeta: [f64; 2],
    pub samples: usize,
    pub visibility: f64,
    pub zeros: usize,
    pub p_max: f64,
    pub normalization: String,
    pub format: Format,
    pub output: Option<String>,
}

/// Renders the export for `config` without touching the filesystem.
pub fn render_scan(config: &RunConfig) -> Result<(String, ScanSummary), CliError> {
    let scan = compute_scan(config)?;
    let export = ScanExport::new(&scan, config)?;
    let text = match config.output.format {
        Format::Csv => export.to_csv(),
        Format::Json => export.to_json()?,
    };
    let report = visibility(&scan)?;
    let scale = normalization_scale(&scan, config.output.normalization);
    let summary = ScanSummary {
        command: "scan",
        plane: scan.plane().as_str(),
        mode: scan.mode().as_str(),
        zeta: config.detector.zeta,
        samples: scan.len(),
        visibility: report.visibility,
        zeros: count_zeros(&scan, DEFAULT_ZERO_TOLERANCE)?,
        p_max: report.p_max / scale,
        normalization: config.output.normalization.to_string(),
        format: config.output.format,
        output: config.output.path.clone(),
    };
    Ok((text, summary))
}

/// Writes the export to `config.output.path`, or to `fallback` when no path
/// is configured.
pub fn cmd_scan(config: &RunConfig, fallback: &mut dyn Write) -> Result<ScanSummary, CliError> {
    let (text, summary) = render_scan(config)?;
    match &config.output.path {
        Some(path) => fs::write(path, text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from(path),
            source,
        })?,
        None => fallback.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?,
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremum {
    pub param: f64,
    pub theta: f64,
    pub phi: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VisibilitySummary {
    pub command: &'static str,
    pub plane: &'static str,
    pub mode: &'static str,
    pub zeta: [f64; 2],
    pub samples: usize,
    pub visibility: f64,
    pub max: Extremum,
    pub min: Extremum,
    pub zeros: usize,
    pub zero_params: Vec<f64>,
    pub normalization: String,
}

pub fn cmd_visibility(config: &RunConfig) -> Result<VisibilitySummary, CliError> {
    let scan = compute_scan(config)?;
    let r = visibility(&scan)?;
    let scale = normalization_scale(&scan, config.output.normalization);
    let zero_params = emdetect_core::analysis::zero_locations(&scan, DEFAULT_ZERO_TOLERANCE)?;
    Ok(VisibilitySummary {
        command: "visibility",
        plane: scan.plane().as_str(),
        mode: scan.mode().as_str(),
        zeta: config.detector.zeta,
        samples: scan.len(),
        visibility: r.visibility,
        max: Extremum {
            param: r.argmax_param,
            theta: r.argmax.theta(),
            phi: r.argmax.phi(),
            probability: r.p_max / scale,
        },
        min: Extremum {
            param: r.argmin_param,
            theta: r.argmin.theta(),
            phi: r.argmin.phi(),
            probability: r.p_min / scale,
        },
        zeros: zero_params.len(),
        zero_params,
        normalization: config.output.normalization.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantumCheckReport {
    pub command: &'static str,
    pub emitters: usize,
    pub zeta: [f64; 2],
    pub directions: usize,
    /// `max |<O^dagger O> - P_classical / M|` over the grid.
    pub max_deviation: f64,
    /// `max |<O^dagger O> - |sum_j c_j|^2 / M|` over the grid.
    pub max_deviation_coefficients: f64,
    pub max_quantum: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn cmd_quantum_check(config: &RunConfig) -> Result<QuantumCheckReport, CliError> {
    let n = config.emitters.len();
    if n > MAX_MODES {
        return Err(CliError::TooManyEmitters { got: n, max: MAX_MODES });
    }
    let grid = build_sphere_grid(ORACLE_GRID.0, ORACLE_GRID.1)?;
    let check = check_against_classical(
        &config.field_config()?,
        &config.detector_spec()?,
        config.detector.frame,
        &grid,
    )?;
    Ok(QuantumCheckReport {
        command: "quantum-check",
        emitters: n,
        zeta: config.detector.zeta,
        directions: check.directions,
        max_deviation: check.max_deviation_classical,
        max_deviation_coefficients: check.max_deviation_coefficients,
        max_quantum: check.max_quantum,
        tolerance: ORACLE_TOLERANCE,
        pass: check.passes(ORACLE_TOLERANCE),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerEstimate {
    pub n_theta: usize,
    pub n_phi: usize,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerReport {
    pub command: &'static str,
    pub mode: &'static str,
    pub zeta: [f64; 2],
    pub units: &'static str,
    pub coarse: PowerEstimate,
    pub fine: PowerEstimate,
    pub difference: f64,
    pub tolerance: f64,
    pub converged: bool,
}

pub fn cmd_power(config: &RunConfig) -> Result<PowerReport, CliError> {
    let field = config.field_config()?;
    let spec = config.detector_spec()?;
    let estimate = |(n_theta, n_phi): (usize, usize)| -> Result<PowerEstimate, CliError> {
        let grid = build_sphere_grid(n_theta, n_phi)?;
        Ok(PowerEstimate {
            n_theta,
            n_phi,
            total: total_power_parallel(&field, &spec, config.detector.frame, config.scan.mode, &grid),
        })
    };
    let coarse = estimate(POWER_GRIDS[0])?;
    let fine = estimate(POWER_GRIDS[1])?;
    let difference = (fine.total - coarse.total).abs();
    Ok(PowerReport {
        command: "power",
        mode: config.scan.mode.as_str(),
        zeta: config.detector.zeta,
        units: "raw",
        coarse,
        fine,
        difference,
        tolerance: POWER_TOLERANCE,
        converged: difference < POWER_TOLERANCE,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresetInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub config: RunConfig,
}

pub fn cmd_presets() -> Vec<PresetInfo> {
    PRESETS
        .iter()
        .map(|p| PresetInfo {
            name: p.name,
            description: p.description,
            config: p.config(),
        })
        .collect()
}

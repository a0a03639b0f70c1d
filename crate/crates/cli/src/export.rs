//! Export rows and their CSV / JSON serializations.
//!
//! Floats are written with 12 significant digits in C-style scientific
//! notation (`-1.23456789012e-05`), rows ordered by scan parameter, lines
//! terminated by `\n`. Identical inputs give byte-identical files.

use emdetect_core::analysis::{AngularScan, ScanPlane};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{Normalization, RunConfig};
use crate::CliError;

pub const CSV_HEADER: &str = "param,theta,phi,probability,mode,zeta_re,zeta_im";

/// One exported sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub param: f64,
    pub theta: f64,
    pub phi: f64,
    pub probability: f64,
    pub mode: &'static str,
    pub zeta_re: f64,
    pub zeta_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_sha256: String,
    pub plane: &'static str,
    pub parametrization: &'static str,
    pub mode: &'static str,
    pub frame: &'static str,
    pub zeta: [f64; 2],
    pub sensitivity: f64,
    pub wavelength: f64,
    pub emitters: usize,
    pub samples: usize,
    pub normalization: String,
    pub normalization_scale: f64,
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanExport {
    pub provenance: Provenance,
    pub records: Vec<ScanRecord>,
}

/// 12 significant digits, two-digit signed exponent; `-0` prints as `0`.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.11e}");
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ('-', d),
                None => ('+', exp),
            };
            format!("{mantissa}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

fn round12(x: f64) -> f64 {
    format_float(x).parse().expect("formatted float parses")
}

/// SHA-256 of the compact JSON form of the physics part of the config.
pub fn config_hash(config: &RunConfig) -> Result<String, CliError> {
    let canonical = serde_json::to_vec(&config.physics())?;
    Ok(hex::encode(Sha256::digest(&canonical)))
}

fn parametrization(plane: ScanPlane) -> &'static str {
    match plane {
        ScanPlane::Xy => "theta = pi/2, phi = param",
        ScanPlane::Xz => "param <= pi: (theta = param, phi = 0); param > pi: (theta = 2pi - param, phi = pi)",
    }
}

/// Divisor applied to every probability for the requested normalization.
pub fn normalization_scale(scan: &AngularScan, normalization: Normalization) -> f64 {
    match normalization {
        Normalization::Raw => 1.0,
        Normalization::Relative => {
            let m = scan.glauber_reference_max();
            if m > 0.0 {
                m
            } else {
                1.0
            }
        }
    }
}

impl ScanExport {
    pub fn new(scan: &AngularScan, config: &RunConfig) -> Result<Self, CliError> {
        let normalization = config.output.normalization;
        let scale = normalization_scale(scan, normalization);
        let setup = scan.setup();
        let zeta = setup.spec.zeta();
        let mode = scan.mode().as_str();
        let records = scan
            .samples()
            .iter()
            .map(|s| ScanRecord {
                param: round12(s.param),
                theta: round12(s.direction.theta()),
                phi: round12(s.direction.phi()),
                probability: round12(s.probability / scale),
                mode,
                zeta_re: round12(zeta.re),
                zeta_im: round12(zeta.im),
            })
            .collect();
        Ok(Self {
            provenance: Provenance {
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                config_sha256: config_hash(config)?,
                plane: scan.plane().as_str(),
                parametrization: parametrization(scan.plane()),
                mode,
                frame: setup.frame.as_str(),
                zeta: [zeta.re, zeta.im],
                sensitivity: setup.spec.sensitivity(),
                wavelength: setup.config.wavelength(),
                emitters: setup.config.emitters().len(),
                samples: scan.len(),
                normalization: normalization.to_string(),
                normalization_scale: scale,
                config: config.physics(),
            },
            records,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(96 * (self.records.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let fields = [
                format_float(r.param),
                format_float(r.theta),
                format_float(r.phi),
                format_float(r.probability),
                r.mode.to_string(),
                format_float(r.zeta_re),
                format_float(r.zeta_im),
            ];
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

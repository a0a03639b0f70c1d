//! Run configuration: a single JSON document describing emitters, detector,
//! scan and output.
//!
//! ```json
//! {
//!   "wavelength": 1.0,
//!   "emitters": [
//!     { "position": [-1.5, 0, 0], "moment": [[0, 0], [0, 0], [1, 0]], "phase": 0 },
//!     { "position": [1.5, 0, 0] }
//!   ],
//!   "detector": { "zeta": [0, 0], "frame": "local", "sensitivity": 1.0 },
//!   "scan": { "plane": "xy", "samples": 720, "mode": "scattering" },
//!   "output": { "format": "csv", "path": "out.csv", "normalization": "relative" }
//! }
//! ```
//!
//! Positions are in wavelengths, complex numbers are `[re, im]` pairs.
//! Everything except `emitters[*].position` has a default.

use std::fmt;
use std::str::FromStr;

use emdetect_core::analysis::{DetectionMode, ScanPlane, MIN_SCAN_SAMPLES};
use emdetect_core::detector::{DetectorFrame, DetectorSpec};
use emdetect_core::fields::{Emitter, FieldConfig};
use emdetect_core::math::{ComplexVec3, Vec3};
use emdetect_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_SAMPLES: usize = 720;

/// `[re, im]`.
pub type ComplexPair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "one")]
    pub wavelength: f64,
    pub emitters: Vec<EmitterConfig>,
    #[serde(default)]
    pub detector: DetectorConfig,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmitterConfig {
    pub position: [f64; 3],
    #[serde(default = "z_moment")]
    pub moment: [ComplexPair; 3],
    #[serde(default)]
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorConfig {
    #[serde(default)]
    pub zeta: ComplexPair,
    #[serde(default, with = "tag")]
    pub frame: DetectorFrame,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_e: Option<[ComplexPair; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_b: Option<[ComplexPair; 3]>,
    #[serde(default = "one")]
    pub sensitivity: f64,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            zeta: [0.0, 0.0],
            frame: DetectorFrame::Local,
            u_e: None,
            u_b: None,
            sensitivity: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    #[serde(default = "xy", with = "tag")]
    pub plane: ScanPlane,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default, with = "tag")]
    pub mode: DetectionMode,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            plane: ScanPlane::Xy,
            samples: DEFAULT_SAMPLES,
            mode: DetectionMode::Scattering,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// `relative` divides by the maximum of the `zeta = 0` scattering scan on
/// the same sampling; `raw` keeps internal units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    Relative,
    Raw,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Relative => "relative",
            Normalization::Raw => "raw",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub normalization: Normalization,
}

fn one() -> f64 {
    1.0
}

fn xy() -> ScanPlane {
    ScanPlane::Xy
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn z_moment() -> [ComplexPair; 3] {
    [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
}

mod tag {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer, T: Display>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D, T>(d: D) -> Result<T, D::Error>
    where
        D: Deserializer<'de>,
        T: FromStr,
        T::Err: Display,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

fn complex(p: ComplexPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn complex_vec(v: [ComplexPair; 3]) -> ComplexVec3 {
    ComplexVec3::new(complex(v[0]), complex(v[1]), complex(v[2]))
}

fn check_finite(path: &str, values: &[f64]) -> Result<(), CliError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(CliError::schema(path, "numbers must be finite"))
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::schema(if path == "." { "$".to_string() } else { path }, e.inner().to_string())
    })?;
    config.validate()?;
    Ok(config)
}

impl RunConfig {
    /// Two in-phase `z` dipoles at `+-(separation/2) x_hat`.
    pub fn dipole_pair(separation: f64) -> Self {
        let h = 0.5 * separation;
        let e = |x: f64| EmitterConfig {
            position: [x, 0.0, 0.0],
            moment: z_moment(),
            phase: 0.0,
        };
        Self {
            wavelength: 1.0,
            emitters: vec![e(-h), e(h)],
            detector: DetectorConfig::default(),
            scan: ScanConfig::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Schema-level checks beyond what deserialization enforces.
    pub fn validate(&self) -> Result<(), CliError> {
        check_finite("wavelength", &[self.wavelength])?;
        if self.wavelength <= 0.0 {
            return Err(CliError::schema("wavelength", "must be positive"));
        }
        if self.emitters.is_empty() {
            return Err(CliError::schema("emitters", "at least one emitter is required"));
        }
        for (i, e) in self.emitters.iter().enumerate() {
            check_finite(&format!("emitters[{i}].position"), &e.position)?;
            check_finite(&format!("emitters[{i}].moment"), e.moment.as_flattened())?;
            check_finite(&format!("emitters[{i}].phase"), &[e.phase])?;
            if e.moment.as_flattened().iter().all(|&v| v == 0.0) {
                return Err(CliError::schema(
                    format!("emitters[{i}].moment"),
                    "dipole moment must be non-zero",
                ));
            }
        }
        let d = &self.detector;
        check_finite("detector.zeta", &d.zeta)?;
        check_finite("detector.sensitivity", &[d.sensitivity])?;
        if d.sensitivity <= 0.0 {
            return Err(CliError::schema("detector.sensitivity", "must be positive"));
        }
        for (name, u) in [("detector.u_e", d.u_e), ("detector.u_b", d.u_b)] {
            match u {
                Some(u) => {
                    check_finite(name, u.as_flattened())?;
                    let n = complex_vec(u).norm_sqr();
                    if (n - 1.0).abs() > 1e-12 {
                        return Err(CliError::schema(name, format!("must be unit-normalized, |u|^2 = {n}")));
                    }
                }
                None if d.frame == DetectorFrame::Lab => {
                    return Err(CliError::schema(name, "required when frame is `lab`"));
                }
                None => {}
            }
        }
        if self.scan.samples < MIN_SCAN_SAMPLES {
            return Err(CliError::schema(
                "scan.samples",
                format!("must be at least {MIN_SCAN_SAMPLES}"),
            ));
        }
        Ok(())
    }

    pub fn field_config(&self) -> Result<FieldConfig, CliError> {
        let emitters = self
            .emitters
            .iter()
            .map(|e| Emitter::new(Vec3::from(e.position), complex_vec(e.moment), e.phase))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldConfig::new(self.wavelength, emitters)?)
    }

    pub fn detector_spec(&self) -> Result<DetectorSpec, CliError> {
        let d = &self.detector;
        let defaults = DetectorSpec::glauber();
        let u_e = d.u_e.map(complex_vec).unwrap_or(defaults.u_e());
        let u_b = d.u_b.map(complex_vec).unwrap_or(defaults.u_b());
        Ok(DetectorSpec::new(u_e, u_b, complex(d.zeta), d.sensitivity)?)
    }

    /// Config with the output path removed; the part that determines the
    /// numbers in an export.
    pub fn physics(&self) -> RunConfig {
        let mut c = self.clone();
        c.output.path = None;
        c
    }
}

/// Named configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    plane: ScanPlane,
}

pub const PRESETS: [Preset; 2] = [
    Preset {
        name: "fig2a",
        description: "pair of z dipoles, d = 3 wavelengths, xz-plane scan",
        plane: ScanPlane::Xz,
    },
    Preset {
        name: "fig2b",
        description: "pair of z dipoles, d = 3 wavelengths, xy-plane scan",
        plane: ScanPlane::Xy,
    },
];

impl Preset {
    pub fn config(&self) -> RunConfig {
        let mut c = RunConfig::dipole_pair(3.0);
        c.scan.plane = self.plane;
        c
    }
}

pub fn preset(name: &str) -> Result<RunConfig, CliError> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .map(Preset::config)
        .ok_or_else(|| CliError::UnknownPreset(name.to_string()))
}

/// Parses `RE` or `RE,IM`.
pub fn parse_zeta(s: &str) -> Result<ComplexPair, CliError> {
    let bad = || CliError::InvalidZeta(s.to_string());
    let mut parts = s.split(',');
    let re: f64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok([re, im])
}

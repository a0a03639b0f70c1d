//! Generalized photodetector coupling to both `E` and `B`.
//!
//! The detection amplitude is `A = u_e* . E + zeta (u_b* . B)` and the
//! detection probability `P = s^2 |A|^2`. `zeta = 0` recovers the
//! electric-only rule.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::fields::{emitter_farfields, total_farfield, FarFieldAmplitude, FieldConfig};
use crate::math::{hermitian_dot, ComplexVec3, Direction, Vec3};
use crate::{Error, Result};

const UNIT_TOLERANCE: f64 = 1e-12;

/// Detector polarization sensitivities, mixing parameter and empirical
/// sensitivity `s`.
///
/// `u_e` and `u_b` are only consulted in [`DetectorFrame::Lab`]; the local
/// frame replaces them with `theta_hat` and `phi_hat`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSpec {
    u_e: ComplexVec3,
    u_b: ComplexVec3,
    zeta: Complex64,
    sensitivity: f64,
}

impl DetectorSpec {
    pub fn new(u_e: ComplexVec3, u_b: ComplexVec3, zeta: Complex64, sensitivity: f64) -> Result<Self> {
        for (which, u) in [("electric", u_e), ("magnetic", u_b)] {
            let norm_sqr = hermitian_dot(u, u).re;
            if !u.is_finite() || (norm_sqr - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::NonUnitPolarization { which, norm_sqr });
            }
        }
        if !(zeta.re.is_finite() && zeta.im.is_finite()) {
            return Err(Error::NonFiniteZeta);
        }
        if !(sensitivity.is_finite() && sensitivity > 0.0) {
            return Err(Error::NonPositiveSensitivity(sensitivity));
        }
        Ok(Self {
            u_e,
            u_b,
            zeta,
            sensitivity,
        })
    }

    /// Unit sensitivity with lab vectors `u_e = z_hat`, `u_b = y_hat`.
    pub fn with_zeta(zeta: Complex64) -> Result<Self> {
        Self::new(Vec3::Z.into(), Vec3::Y.into(), zeta, 1.0)
    }

    /// The electric-only detector.
    pub fn glauber() -> Self {
        Self {
            u_e: Vec3::Z.into(),
            u_b: Vec3::Y.into(),
            zeta: Complex64::new(0.0, 0.0),
            sensitivity: 1.0,
        }
    }

    pub fn u_e(&self) -> ComplexVec3 {
        self.u_e
    }

    pub fn u_b(&self) -> ComplexVec3 {
        self.u_b
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn sensitivity(&self) -> f64 {
        self.sensitivity
    }

    pub fn with_sensitivity(self, sensitivity: f64) -> Result<Self> {
        Self::new(self.u_e, self.u_b, self.zeta, sensitivity)
    }

    pub fn with_mixing(self, zeta: Complex64) -> Result<Self> {
        Self::new(self.u_e, self.u_b, zeta, self.sensitivity)
    }
}

impl Default for DetectorSpec {
    fn default() -> Self {
        Self::glauber()
    }
}

/// How the detector polarization vectors are resolved at a direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetectorFrame {
    /// `u_e`, `u_b` taken verbatim from the [`DetectorSpec`].
    Lab,
    /// `u_e = theta_hat`, `u_b = phi_hat` at every direction.
    #[default]
    Local,
}

impl DetectorFrame {
    pub fn resolve(self, spec: &DetectorSpec, d: Direction) -> (ComplexVec3, ComplexVec3) {
        match self {
            DetectorFrame::Lab => (spec.u_e, spec.u_b),
            DetectorFrame::Local => {
                let b = d.basis();
                (b.theta.into(), b.phi.into())
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DetectorFrame::Lab => "lab",
            DetectorFrame::Local => "local",
        }
    }
}

impl fmt::Display for DetectorFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DetectorFrame {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lab" => Ok(DetectorFrame::Lab),
            "local" => Ok(DetectorFrame::Local),
            other => Err(Error::UnknownFrame(other.to_string())),
        }
    }
}

/// `u_e* . E + zeta (u_b* . B)` with the polarization vectors resolved per
/// `frame` at `d`. `f` must have been evaluated at `d`; in the local frame its
/// stored components are used directly.
pub fn detection_amplitude(
    f: &FarFieldAmplitude,
    spec: &DetectorSpec,
    frame: DetectorFrame,
    _d: Direction,
) -> Complex64 {
    let (e, b) = projections(f, spec, frame);
    e + spec.zeta * b
}

/// `(u_e* . E, u_b* . B)`. In the local frame these are the stored
/// components `E_theta` and `B_phi`.
fn projections(f: &FarFieldAmplitude, spec: &DetectorSpec, frame: DetectorFrame) -> (Complex64, Complex64) {
    match frame {
        DetectorFrame::Lab => (hermitian_dot(spec.u_e, f.e_field), hermitian_dot(spec.u_b, f.b_field)),
        DetectorFrame::Local => (f.e_theta, f.b_phi()),
    }
}

/// `s^2 |A|^2`.
pub fn detection_probability(f: &FarFieldAmplitude, spec: &DetectorSpec, frame: DetectorFrame, d: Direction) -> f64 {
    let s = spec.sensitivity;
    s * s * detection_amplitude(f, spec, frame, d).norm_sqr()
}

/// Electric-only probability `s^2 |u_e* . E|^2`; `u_e` must be unit.
pub fn glauber_probability(f: &FarFieldAmplitude, u_e: ComplexVec3, s: f64) -> f64 {
    debug_assert!((hermitian_dot(u_e, u_e).re - 1.0).abs() < 1e-9);
    s * s * hermitian_dot(u_e, f.e_field).norm_sqr()
}

/// How absorbed power is distributed over directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsorptionMode {
    /// Ideal absorber: half the coherent detection pattern.
    Coherent,
    /// No interference at all: per-emitter, per-channel probabilities are
    /// added incoherently.
    ParticleLike,
}

impl AbsorptionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AbsorptionMode::Coherent => "coherent",
            AbsorptionMode::ParticleLike => "particle_like",
        }
    }
}

impl FromStr for AbsorptionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coherent" => Ok(AbsorptionMode::Coherent),
            "particle_like" | "particle-like" => Ok(AbsorptionMode::ParticleLike),
            other => Err(Error::UnknownMode(other.to_string())),
        }
    }
}

/// At the ideal-absorber limit absorption and scattering cross sections are
/// equal, so absorbed power is half of the extinguished power.
pub const IDEAL_ABSORBER_FRACTION: f64 = 0.5;

/// Absorbed-power density at `d`.
///
/// `Coherent` is `1/2` of [`detection_probability`] for the summed field.
/// `ParticleLike` is `1/2 s^2 sum_j (|u_e* . E_j|^2 + |zeta|^2 |u_b* . B_j|^2)`:
/// neither emitter-emitter nor electric-magnetic cross terms survive. For a
/// pair of `z` dipoles this is `sin^2(theta)`-weighted and independent of
/// `phi`, and it stays finite at `zeta = -1`.
pub fn absorbed_distribution(
    config: &FieldConfig,
    spec: &DetectorSpec,
    frame: DetectorFrame,
    mode: AbsorptionMode,
    d: Direction,
) -> f64 {
    match mode {
        AbsorptionMode::Coherent => {
            IDEAL_ABSORBER_FRACTION * detection_probability(&total_farfield(config, d), spec, frame, d)
        }
        AbsorptionMode::ParticleLike => {
            let s2 = spec.sensitivity * spec.sensitivity;
            let z2 = spec.zeta.norm_sqr();
            let incoherent: f64 = emitter_farfields(config, d)
                .iter()
                .map(|f| {
                    let (e, b) = projections(f, spec, frame);
                    e.norm_sqr() + z2 * b.norm_sqr()
                })
                .sum();
            IDEAL_ABSORBER_FRACTION * s2 * incoherent
        }
    }
}

/// Complex polarizability `alpha(omega)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Polarizability {
    Constant(Complex64),
    /// `strength / (omega0^2 - omega^2 - i gamma omega)`.
    Lorentzian {
        strength: f64,
        omega0: f64,
        gamma: f64,
    },
    /// `(omega, alpha)` samples with strictly increasing `omega`, linearly
    /// interpolated.
    Tabulated(Vec<(f64, Complex64)>),
}

impl Polarizability {
    pub fn evaluate(&self, omega: f64) -> Result<Complex64> {
        match self {
            Polarizability::Constant(a) => Ok(*a),
            Polarizability::Lorentzian {
                strength,
                omega0,
                gamma,
            } => {
                let denom = Complex64::new(omega0 * omega0 - omega * omega, -gamma * omega);
                if denom.norm_sqr() == 0.0 {
                    return Err(Error::InvalidPolarizability(
                        "lossless Lorentzian evaluated on resonance",
                    ));
                }
                Ok(Complex64::new(*strength, 0.0) / denom)
            }
            Polarizability::Tabulated(samples) => {
                let first = samples.first().ok_or(Error::InvalidPolarizability("empty table"))?;
                let last = samples[samples.len() - 1];
                if omega < first.0 || omega > last.0 {
                    return Err(Error::FrequencyOutOfRange(omega));
                }
                let i = samples.partition_point(|&(w, _)| w <= omega);
                if i == samples.len() {
                    return Ok(last.1);
                }
                let (w0, a0) = samples[i - 1];
                let (w1, a1) = samples[i];
                let t = (omega - w0) / (w1 - w0);
                Ok(a0 + (a1 - a0) * t)
            }
        }
    }
}

/// Polarizability model evaluated at a single angular frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizabilityModel {
    alpha: Polarizability,
    omega: f64,
}

impl PolarizabilityModel {
    /// Rejects non-passive models (`Im alpha < 0` anywhere on the represented
    /// range) and malformed tables.
    pub fn new(alpha: Polarizability, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::InvalidPolarizability("omega must be finite and non-negative"));
        }
        match &alpha {
            Polarizability::Constant(a) if a.im < 0.0 => return Err(Error::NonPassive(a.im)),
            Polarizability::Lorentzian { gamma, omega0, .. } => {
                if !(gamma.is_finite() && omega0.is_finite()) {
                    return Err(Error::InvalidPolarizability("non-finite Lorentzian parameters"));
                }
                if *gamma < 0.0 {
                    return Err(Error::NonPassive(*gamma));
                }
            }
            Polarizability::Tabulated(samples) => {
                if samples.is_empty() {
                    return Err(Error::InvalidPolarizability("empty table"));
                }
                if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(Error::InvalidPolarizability("table frequencies must increase"));
                }
                if let Some(&(_, a)) = samples.iter().find(|(_, a)| a.im < 0.0) {
                    return Err(Error::NonPassive(a.im));
                }
            }
            _ => {}
        }
        Ok(Self { alpha, omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn alpha(&self) -> Result<Complex64> {
        self.alpha.evaluate(self.omega)
    }
}

/// Extinction scale `(omega / c) Im alpha(omega)` with `c = 1`.
pub fn extinction_scale(model: &PolarizabilityModel) -> Result<f64> {
    let alpha = model.alpha()?;
    if alpha.im < 0.0 {
        return Err(Error::NonPassive(alpha.im));
    }
    Ok(model.omega * alpha.im)
}

//! Hertzian dipole emitters and the coherent superposition of their
//! radiation-zone fields.
//!
//! Units: `c = 1`, so a transverse far field obeys `B = r_hat x E` and
//! `|B| = |E|`. The common `exp(ikr)/r` envelope and all constant
//! prefactors are dropped; only relative amplitudes are meaningful. The
//! phase reference is the coordinate origin.
//!
//! Emitter positions are given in units of the wavelength.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::math::{cis, ComplexVec3, Direction, Vec3};
use crate::{Error, Result};

/// One Hertzian dipole source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Emitter {
    position: Vec3,
    moment: ComplexVec3,
    phase: f64,
}

impl Emitter {
    /// `position` in wavelengths, `moment` in arbitrary relative units,
    /// `phase` the relative drive phase in radians.
    pub fn new(position: Vec3, moment: ComplexVec3, phase: f64) -> Result<Self> {
        if !position.is_finite() || !phase.is_finite() {
            return Err(Error::NonFiniteEmitter);
        }
        if !moment.is_finite() || moment.norm_sqr() == 0.0 {
            return Err(Error::ZeroMoment);
        }
        Ok(Self {
            position,
            moment,
            phase,
        })
    }

    /// Unit `z`-oriented dipole with zero drive phase.
    pub fn z_dipole(position: Vec3) -> Self {
        Self {
            position,
            moment: ComplexVec3::from_real(Vec3::Z),
            phase: 0.0,
        }
    }

    pub fn position(&self) -> Vec3 {
        self.position
    }

    pub fn moment(&self) -> ComplexVec3 {
        self.moment
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }
}

/// Wavelength plus an ordered, non-empty list of emitters.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldConfig {
    wavelength: f64,
    emitters: Vec<Emitter>,
}

impl FieldConfig {
    pub fn new(wavelength: f64, emitters: Vec<Emitter>) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::InvalidWavelength(wavelength));
        }
        if emitters.is_empty() {
            return Err(Error::NoEmitters);
        }
        Ok(Self { wavelength, emitters })
    }

    /// Two in-phase `z` dipoles at `+-(separation/2) x_hat`, separation in
    /// wavelengths, unit wavelength.
    pub fn dipole_pair(separation: f64) -> Self {
        let half = 0.5 * separation;
        Self {
            wavelength: 1.0,
            emitters: alloc::vec![
                Emitter::z_dipole(Vec3::new(-half, 0.0, 0.0)),
                Emitter::z_dipole(Vec3::new(half, 0.0, 0.0)),
            ],
        }
    }

    /// A single `z` dipole at the origin.
    pub fn single_dipole() -> Self {
        Self {
            wavelength: 1.0,
            emitters: alloc::vec![Emitter::z_dipole(Vec3::ZERO)],
        }
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// `k = 2 pi / lambda`.
    pub fn wavenumber(&self) -> f64 {
        TAU / self.wavelength
    }

    pub fn emitters(&self) -> &[Emitter] {
        &self.emitters
    }

    /// Same wavelength, emitters of `self` followed by those of `other`.
    pub fn concat(&self, other: &FieldConfig) -> FieldConfig {
        let mut emitters = self.emitters.clone();
        emitters.extend_from_slice(&other.emitters);
        FieldConfig {
            wavelength: self.wavelength,
            emitters,
        }
    }

    /// Adds `alpha` to the drive phase of every emitter.
    pub fn with_common_phase(&self, alpha: f64) -> FieldConfig {
        FieldConfig {
            wavelength: self.wavelength,
            emitters: self.emitters.iter().map(|e| e.with_phase(e.phase + alpha)).collect(),
        }
    }

    /// Separation of an `x`-axis-symmetric pair, in wavelengths.
    pub fn pair_separation(&self) -> Result<f64> {
        let [a, b] = self.emitters.as_slice() else {
            return Err(Error::NotSymmetricPair);
        };
        let (pa, pb) = (a.position, b.position);
        let on_axis = pa.y == 0.0 && pa.z == 0.0 && pb.y == 0.0 && pb.z == 0.0;
        let scale = pa.x.abs().max(pb.x.abs()).max(1.0);
        if !on_axis || (pa.x + pb.x).abs() > 1e-12 * scale {
            return Err(Error::NotSymmetricPair);
        }
        Ok((pb.x - pa.x).abs())
    }
}

/// Complex `E` and `B` amplitudes at one far-field direction.
///
/// The field is transverse, so it is carried as its components along the
/// local `theta_hat` and `phi_hat` of that direction; `B = r x E` then has
/// `B_theta = -E_phi` and `B_phi = E_theta` with no rounding. The Cartesian
/// vectors are rebuilt from the components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FarFieldAmplitude {
    pub e_field: ComplexVec3,
    pub b_field: ComplexVec3,
    pub e_theta: Complex64,
    pub e_phi: Complex64,
}

impl core::ops::Add for FarFieldAmplitude {
    type Output = FarFieldAmplitude;
    fn add(self, rhs: FarFieldAmplitude) -> FarFieldAmplitude {
        FarFieldAmplitude {
            e_field: self.e_field + rhs.e_field,
            b_field: self.b_field + rhs.b_field,
            e_theta: self.e_theta + rhs.e_theta,
            e_phi: self.e_phi + rhs.e_phi,
        }
    }
}

impl FarFieldAmplitude {
    /// Transverse field with components `(e_theta, e_phi)` at `d`.
    pub fn transverse(d: Direction, e_theta: Complex64, e_phi: Complex64) -> FarFieldAmplitude {
        let b = d.basis();
        let (th, ph) = (ComplexVec3::from_real(b.theta), ComplexVec3::from_real(b.phi));
        FarFieldAmplitude {
            e_field: th * e_theta + ph * e_phi,
            b_field: ph * e_theta - th * e_phi,
            e_theta,
            e_phi,
        }
    }

    pub fn b_theta(&self) -> Complex64 {
        -self.e_phi
    }

    pub fn b_phi(&self) -> Complex64 {
        self.e_theta
    }

    pub fn scale(self, c: Complex64) -> FarFieldAmplitude {
        FarFieldAmplitude {
            e_field: self.e_field * c,
            b_field: self.b_field * c,
            e_theta: self.e_theta * c,
            e_phi: self.e_phi * c,
        }
    }
}

/// Far-field phase difference `delta = k d sin(theta) cos(phi)` of an
/// `x`-axis-symmetric pair.
pub fn phase_delta(config: &FieldConfig, d: Direction) -> Result<f64> {
    let separation = config.pair_separation()? * config.wavelength;
    Ok(config.wavenumber() * separation * libm::sin(d.theta()) * libm::cos(d.phi()))
}

/// Radiation-zone field of one dipole:
/// `E = ((r x p) x r) exp(i phase) exp(-i k r.x0)`, `B = r x E`.
///
/// `k` is the wavenumber in inverse units of the emitter position, i.e.
/// `2 pi` for positions measured in wavelengths.
pub fn single_dipole_farfield(e: &Emitter, k: f64, d: Direction) -> FarFieldAmplitude {
    // (r x p) x r is the part of p transverse to r
    let b = d.basis();
    let phase = cis(e.phase - k * b.r.dot(e.position));
    let p_theta = ComplexVec3::from_real(b.theta).dot(e.moment);
    let p_phi = ComplexVec3::from_real(b.phi).dot(e.moment);
    FarFieldAmplitude::transverse(d, p_theta * phase, p_phi * phase)
}

/// Per-emitter far fields, in emitter order.
pub fn emitter_farfields(config: &FieldConfig, d: Direction) -> Vec<FarFieldAmplitude> {
    config
        .emitters
        .iter()
        .map(|e| single_dipole_farfield(e, TAU, d))
        .collect()
}

/// Coherent sum over all emitters.
pub fn total_farfield(config: &FieldConfig, d: Direction) -> FarFieldAmplitude {
    config
        .emitters
        .iter()
        .map(|e| single_dipole_farfield(e, TAU, d))
        .fold(FarFieldAmplitude::default(), |acc, f| acc + f)
}

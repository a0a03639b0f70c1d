use core::f64::consts::PI;

use super::Vec3;
use crate::{Error, Result};

/// Observation direction in spherical angles.
///
/// `theta` is the polar angle in `[0, pi]`, `phi` the azimuth, stored
/// reduced to `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::PolarAngleOutOfRange(theta));
        }
        Ok(Self {
            theta,
            phi: super::wrap_angle(phi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unit_vector(&self) -> Vec3 {
        spherical_basis(*self).r
    }

    pub fn basis(&self) -> SphericalBasis {
        spherical_basis(*self)
    }
}

/// Orthonormal right-handed triad `(r, theta, phi)` at one direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalBasis {
    pub r: Vec3,
    pub theta: Vec3,
    pub phi: Vec3,
}

/// Local spherical unit vectors at `d`.
///
/// At the poles the triad is evaluated at the stored azimuth, so it is still
/// orthonormal but not continuous in `phi`.
pub fn spherical_basis(d: Direction) -> SphericalBasis {
    let (st, ct) = (libm::sin(d.theta), libm::cos(d.theta));
    let (sp, cp) = (libm::sin(d.phi), libm::cos(d.phi));
    SphericalBasis {
        r: Vec3::new(st * cp, st * sp, ct),
        theta: Vec3::new(ct * cp, ct * sp, -st),
        phi: Vec3::new(-sp, cp, 0.0),
    }
}

//! Vector algebra, spherical bases and sphere quadrature.

mod quadrature;
mod sphere;
mod vector;

pub use quadrature::{build_sphere_grid, build_uniform_grid, gauss_legendre, GridScheme, SphereGrid};
pub use sphere::{spherical_basis, Direction, SphericalBasis};
pub use vector::{hermitian_dot, ComplexVec3, Vec3};

use num_complex::Complex64;

/// `exp(i x)`.
#[inline]
pub fn cis(x: f64) -> Complex64 {
    Complex64::new(libm::cos(x), libm::sin(x))
}

/// Reduces an angle to `[0, 2 pi)`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut r = libm::fmod(x, core::f64::consts::TAU);
    if r < 0.0 {
        r += core::f64::consts::TAU;
    }
    if r >= core::f64::consts::TAU {
        r = 0.0;
    }
    r
}

//! Far-field radiation of Hertzian dipole arrays and a photodetector model
//! that couples coherently to both the electric and the magnetic field.
//!
//! A detector with sensitivity vectors `u_e`, `u_b` and complex mixing
//! parameter `zeta` registers the amplitude
//!
//! ```text
//! A = u_e* . E(+)  +  zeta * u_b* . B(+)
//! ```
//!
//! and the probability `P = s^2 |A|^2`. With `zeta = 0` this is the usual
//! electric-only (Glauber) rule. For a transverse far field `B = r x E`, so
//! in the local spherical frame (`u_e = theta_hat`, `u_b = phi_hat`) the
//! probability factorizes as `|1 + zeta|^2` times the Glauber value and
//! vanishes everywhere at `zeta = -1`.
//!
//! The crate is `no_std` and only needs `alloc`. Configuration files, export
//! formats and the command-line tool live in the `emdetect` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod detector;
mod error;
pub mod fields;
pub mod math;
pub mod oracle;

pub use error::{Error, Result};
pub use num_complex::Complex64;

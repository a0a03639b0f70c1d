use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use super::Direction;
use crate::{Error, Result};

/// How a [`SphereGrid`] was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScheme {
    /// Gauss-Legendre in `cos(theta)` times the trapezoid rule in `phi`.
    ProductGauss,
    /// Midpoint rule in `cos(theta)` times the trapezoid rule in `phi`.
    UniformAzimuth,
}

/// Directions with solid-angle weights (steradians) summing to `4 pi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    nodes: Vec<(Direction, f64)>,
    scheme: GridScheme,
    n_theta: usize,
    n_phi: usize,
}

impl SphereGrid {
    pub fn nodes(&self) -> &[(Direction, f64)] {
        &self.nodes
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_theta, self.n_phi)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.nodes.iter().map(|(_, w)| w).sum()
    }

    /// `sum_i w_i f(d_i)`.
    pub fn integrate<F: FnMut(Direction) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().map(|&(d, w)| w * f(d)).sum()
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes in descending order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

// Three-term recurrence for P_n(x) and P_n'(x), |x| < 1.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn check_counts(n_theta: usize, n_phi: usize) -> Result<()> {
    if n_theta < 2 || n_phi < 4 {
        return Err(Error::GridTooSmall { n_theta, n_phi });
    }
    Ok(())
}

fn product_grid(cos_nodes: &[f64], cos_weights: &[f64], n_phi: usize, scheme: GridScheme) -> Result<SphereGrid> {
    let w_phi = TAU / n_phi as f64;
    let mut nodes = Vec::with_capacity(cos_nodes.len() * n_phi);
    for (&x, &wx) in cos_nodes.iter().zip(cos_weights) {
        let theta = libm::acos(x.clamp(-1.0, 1.0));
        for j in 0..n_phi {
            let phi = TAU * j as f64 / n_phi as f64;
            nodes.push((Direction::new(theta, phi)?, wx * w_phi));
        }
    }
    Ok(SphereGrid {
        nodes,
        scheme,
        n_theta: cos_nodes.len(),
        n_phi,
    })
}

/// Product Gauss-Legendre grid with `n_theta` nodes in `cos(theta)` and
/// `n_phi` equispaced azimuths.
pub fn build_sphere_grid(n_theta: usize, n_phi: usize) -> Result<SphereGrid> {
    check_counts(n_theta, n_phi)?;
    let (x, w) = gauss_legendre(n_theta);
    product_grid(&x, &w, n_phi, GridScheme::ProductGauss)
}

/// Midpoint rule in `cos(theta)`; low order, mainly useful as a cross-check.
pub fn build_uniform_grid(n_theta: usize, n_phi: usize) -> Result<SphereGrid> {
    check_counts(n_theta, n_phi)?;
    let h = 2.0 / n_theta as f64;
    let x: Vec<f64> = (0..n_theta).map(|i| 1.0 - (i as f64 + 0.5) * h).collect();
    let w = alloc::vec![h; n_theta];
    product_grid(&x, &w, n_phi, GridScheme::UniformAzimuth)
}

//! Fock-space check of the classical detection formula.
//!
//! Each emitter owns one bosonic mode. The detection operator is expanded as
//! `O = sum_j c_j a_j`, where `c_j` is the detection amplitude of emitter
//! `j`'s own far field, and the detection probability is the normally
//! ordered expectation `<psi| O^dagger O |psi>`. For the symmetric
//! single-photon state over `M` modes this is `|sum_j c_j|^2 / M`, i.e.
//! `1/M` times the classical probability of the summed field.
//!
//! Everything is dense; the space is capped at 4 modes and 2 photons per
//! mode (dimension 81).

mod matrix;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

pub use matrix::ComplexMatrix;

use crate::detector::{detection_amplitude, detection_probability, DetectorFrame, DetectorSpec};
use crate::fields::{emitter_farfields, total_farfield, FieldConfig};
use crate::math::{Direction, SphereGrid};
use crate::{Error, Result};

pub const MAX_MODES: usize = 4;
pub const MAX_CUTOFF: usize = 2;

const NORM_TOLERANCE: f64 = 1e-12;
const IMAGINARY_TOLERANCE: f64 = 1e-12;

/// Truncated multimode Fock space. Basis index
/// `sum_j n_j (cutoff + 1)^j`, so mode 0 varies fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeSpace {
    n_modes: usize,
    cutoff: usize,
}

impl ModeSpace {
    pub fn new(n_modes: usize, cutoff: usize) -> Result<Self> {
        if !(1..=MAX_MODES).contains(&n_modes) || !(1..=MAX_CUTOFF).contains(&cutoff) {
            return Err(Error::ModeSpaceOutOfRange {
                n_modes,
                cutoff,
                max_modes: MAX_MODES,
                max_cutoff: MAX_CUTOFF,
            });
        }
        Ok(Self { n_modes, cutoff })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dimension(&self) -> usize {
        (self.cutoff + 1).pow(self.n_modes as u32)
    }

    /// Occupation numbers of basis vector `index`.
    pub fn occupations(&self, mut index: usize) -> Vec<usize> {
        let base = self.cutoff + 1;
        (0..self.n_modes)
            .map(|_| {
                let n = index % base;
                index /= base;
                n
            })
            .collect()
    }

    /// Basis index of an occupation pattern, `None` if it exceeds the cutoff.
    pub fn index_of(&self, occupations: &[usize]) -> Option<usize> {
        if occupations.len() != self.n_modes || occupations.iter().any(|&n| n > self.cutoff) {
            return None;
        }
        let base = self.cutoff + 1;
        Some(occupations.iter().rev().fold(0, |acc, &n| acc * base + n))
    }

    fn stride(&self, mode: usize) -> usize {
        (self.cutoff + 1).pow(mode as u32)
    }
}

/// Normalized pure state on a [`ModeSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    space: ModeSpace,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    pub fn new(space: ModeSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dimension() {
            return Err(Error::StateDimensionMismatch {
                expected: space.dimension(),
                got: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { space, amplitudes })
    }

    pub fn vacuum(space: ModeSpace) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); space.dimension()];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self { space, amplitudes }
    }

    /// Number state `|n_0 n_1 ...>`; `None` if the pattern does not fit.
    pub fn fock(space: ModeSpace, occupations: &[usize]) -> Option<Self> {
        let idx = space.index_of(occupations)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); space.dimension()];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Some(Self { space, amplitudes })
    }

    pub fn space(&self) -> ModeSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<psi| M |psi>`.
    pub fn expectation(&self, m: &ComplexMatrix) -> Result<Complex64> {
        if m.dim() != self.amplitudes.len() {
            return Err(Error::OperatorDimensionMismatch {
                expected: self.amplitudes.len(),
                got: m.dim(),
            });
        }
        let v = m.apply(&self.amplitudes);
        Ok(self.amplitudes.iter().zip(&v).map(|(a, b)| a.conj() * b).sum())
    }
}

/// Per-mode coefficients `c_j` of `O = sum_j c_j a_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionCoefficients(Vec<Complex64>);

impl DetectionCoefficients {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self(coeffs)
    }

    /// `c_j = u_e* . E_j + zeta (u_b* . B_j)` for each emitter's own field
    /// at `d`. The sensitivity `s` is not included.
    pub fn from_emitters(config: &FieldConfig, spec: &DetectorSpec, frame: DetectorFrame, d: Direction) -> Self {
        Self(
            emitter_farfields(config, d)
                .iter()
                .map(|f| detection_amplitude(f, spec, frame, d))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Complex64 {
        self.0.iter().sum()
    }
}

/// Ladder operator of one mode, identity on the others.
pub fn annihilation_matrix(space: ModeSpace, mode: usize) -> Result<ComplexMatrix> {
    if mode >= space.n_modes {
        return Err(Error::ModeIndexOutOfRange {
            index: mode,
            n_modes: space.n_modes,
        });
    }
    let dim = space.dimension();
    let stride = space.stride(mode);
    let mut a = ComplexMatrix::zeros(dim);
    for col in 0..dim {
        let n = (col / stride) % (space.cutoff + 1);
        if n > 0 {
            a[(col - stride, col)] = Complex64::new(libm::sqrt(n as f64), 0.0);
        }
    }
    Ok(a)
}

/// Total photon number `sum_j a_j^dagger a_j`.
pub fn number_operator(space: ModeSpace) -> ComplexMatrix {
    let mut n = ComplexMatrix::zeros(space.dimension());
    for j in 0..space.n_modes {
        let a = annihilation_matrix(space, j).expect("mode index in range");
        n = &n + &(&a.adjoint() * &a);
    }
    n
}

/// `O = sum_j c_j a_j`.
pub fn build_detection_operator(space: ModeSpace, coeffs: &DetectionCoefficients) -> Result<ComplexMatrix> {
    if coeffs.len() != space.n_modes {
        return Err(Error::CoefficientMismatch {
            expected: space.n_modes,
            got: coeffs.len(),
        });
    }
    let mut op = ComplexMatrix::zeros(space.dimension());
    for (j, &c) in coeffs.as_slice().iter().enumerate() {
        op = &op + &annihilation_matrix(space, j)?.scale(c);
    }
    Ok(op)
}

/// `<psi| O^dagger O |psi>`, evaluated through the explicit product matrix.
pub fn expectation_normal_ordered(state: &QuantumState, op: &ComplexMatrix) -> Result<f64> {
    let norm_sqr: f64 = state.amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm_sqr));
    }
    let product = &op.adjoint() * op;
    let value = state.expectation(&product)?;
    if value.im.abs() > IMAGINARY_TOLERANCE * value.re.abs().max(1.0) {
        return Err(Error::ImaginaryExpectation(value.im));
    }
    Ok(value.re.max(0.0))
}

/// `(1/sqrt(M)) sum_j |0..1_j..0>`.
pub fn symmetric_single_photon(space: ModeSpace) -> QuantumState {
    let m = space.n_modes;
    let amp = Complex64::new(1.0 / libm::sqrt(m as f64), 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); space.dimension()];
    for j in 0..m {
        amplitudes[space.stride(j)] = amp;
    }
    QuantumState { space, amplitudes }
}

/// Quantum detection probability at one direction for the symmetric
/// single-photon state over the emitters of `config`.
pub fn single_photon_probability(
    config: &FieldConfig,
    spec: &DetectorSpec,
    frame: DetectorFrame,
    d: Direction,
) -> Result<f64> {
    let space = ModeSpace::new(config.emitters().len(), 1)?;
    let coeffs = DetectionCoefficients::from_emitters(config, spec, frame, d);
    let op = build_detection_operator(space, &coeffs)?;
    let s = spec.sensitivity();
    Ok(s * s * expectation_normal_ordered(&symmetric_single_photon(space), &op)?)
}

/// Worst-case agreement between the Fock-space expectation and the
/// classical prediction over a set of directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheck {
    /// `max |<O^dagger O> - P_classical / M|`.
    pub max_deviation_classical: f64,
    /// `max |<O^dagger O> - s^2 |sum_j c_j|^2 / M|`.
    pub max_deviation_coefficients: f64,
    pub max_quantum: f64,
    pub directions: usize,
}

impl OracleCheck {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_deviation_classical < tolerance && self.max_deviation_coefficients < tolerance
    }
}

/// Compares the quantum and classical routes at every node of `grid`.
pub fn check_against_classical(
    config: &FieldConfig,
    spec: &DetectorSpec,
    frame: DetectorFrame,
    grid: &SphereGrid,
) -> Result<OracleCheck> {
    let m = config.emitters().len();
    let space = ModeSpace::new(m, 1)?;
    let state = symmetric_single_photon(space);
    let s2 = spec.sensitivity() * spec.sensitivity();
    let share = 1.0 / m as f64;
    let mut check = OracleCheck {
        max_deviation_classical: 0.0,
        max_deviation_coefficients: 0.0,
        max_quantum: 0.0,
        directions: grid.len(),
    };
    for &(d, _) in grid.nodes() {
        let coeffs = DetectionCoefficients::from_emitters(config, spec, frame, d);
        let op = build_detection_operator(space, &coeffs)?;
        let quantum = s2 * expectation_normal_ordered(&state, &op)?;
        let classical = detection_probability(&total_farfield(config, d), spec, frame, d);
        let from_coeffs = s2 * coeffs.sum().norm_sqr();
        check.max_quantum = check.max_quantum.max(quantum);
        check.max_deviation_classical = check.max_deviation_classical.max((quantum - share * classical).abs());
        check.max_deviation_coefficients = check
            .max_deviation_coefficients
            .max((quantum - share * from_coeffs).abs());
    }
    Ok(check)
}

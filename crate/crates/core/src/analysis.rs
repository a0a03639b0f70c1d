//! Angular scans through the two figure planes, fringe visibility, zero
//! counting and total-power quadrature.
//!
//! Scans are parametrized by `t in [0, 2pi)` sampled at `t_i = 2 pi i / n`:
//!
//! * `xy`: `theta = pi/2`, `phi = t`.
//! * `xz`: `(phi = 0, theta = t)` for `t <= pi`, then
//!   `(phi = pi, theta = 2pi - t)`, i.e. one closed loop through both poles.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::detector::{absorbed_distribution, detection_probability, AbsorptionMode, DetectorFrame, DetectorSpec};
use crate::fields::{total_farfield, FieldConfig};
use crate::math::{wrap_angle, Direction, SphereGrid};
use crate::{Error, Result};

pub const MIN_SCAN_SAMPLES: usize = 8;
/// Zeros are minima below this fraction of the scan maximum.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanPlane {
    Xz,
    Xy,
}

impl ScanPlane {
    /// Direction at scan parameter `t` (any real; reduced modulo `2 pi`).
    pub fn direction_at(self, t: f64) -> Direction {
        let t = wrap_angle(t);
        let (theta, phi) = match self {
            ScanPlane::Xy => (FRAC_PI_2, t),
            ScanPlane::Xz if t <= PI => (t, 0.0),
            ScanPlane::Xz => ((TAU - t).min(PI), PI),
        };
        Direction::new(theta, phi).expect("scan angles are in range")
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ScanPlane::Xz => "xz",
            ScanPlane::Xy => "xy",
        }
    }
}

impl fmt::Display for ScanPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScanPlane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xz" => Ok(ScanPlane::Xz),
            "xy" => Ok(ScanPlane::Xy),
            other => Err(Error::UnknownPlane(other.to_string())),
        }
    }
}

/// Which quantity a scan records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetectionMode {
    /// Detection probability of the summed field.
    #[default]
    Scattering,
    AbsorbedCoherent,
    AbsorbedParticle,
}

impl DetectionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DetectionMode::Scattering => "scattering",
            DetectionMode::AbsorbedCoherent => "absorbed-coherent",
            DetectionMode::AbsorbedParticle => "absorbed-particle",
        }
    }

    pub const ALL: [DetectionMode; 3] = [
        DetectionMode::Scattering,
        DetectionMode::AbsorbedCoherent,
        DetectionMode::AbsorbedParticle,
    ];
}

impl fmt::Display for DetectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DetectionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DetectionMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMode(s.to_string()))
    }
}

/// Everything needed to evaluate a probability at an arbitrary direction.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSetup {
    pub config: FieldConfig,
    pub spec: DetectorSpec,
    pub frame: DetectorFrame,
    pub mode: DetectionMode,
}

impl ScanSetup {
    pub fn new(config: FieldConfig, spec: DetectorSpec, frame: DetectorFrame, mode: DetectionMode) -> Self {
        Self {
            config,
            spec,
            frame,
            mode,
        }
    }

    pub fn evaluate(&self, d: Direction) -> f64 {
        evaluate(&self.config, &self.spec, self.frame, self.mode, d)
    }

    pub fn sample(&self, plane: ScanPlane, param: f64) -> ScanSample {
        let direction = plane.direction_at(param);
        ScanSample {
            param,
            direction,
            probability: self.evaluate(direction),
        }
    }
}

/// Probability recorded by `mode` at direction `d`.
pub fn evaluate(
    config: &FieldConfig,
    spec: &DetectorSpec,
    frame: DetectorFrame,
    mode: DetectionMode,
    d: Direction,
) -> f64 {
    match mode {
        DetectionMode::Scattering => detection_probability(&total_farfield(config, d), spec, frame, d),
        DetectionMode::AbsorbedCoherent => absorbed_distribution(config, spec, frame, AbsorptionMode::Coherent, d),
        DetectionMode::AbsorbedParticle => absorbed_distribution(config, spec, frame, AbsorptionMode::ParticleLike, d),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSample {
    pub param: f64,
    pub direction: Direction,
    pub probability: f64,
}

/// Scan parameters `2 pi i / n`, `i = 0..n`.
pub fn scan_parameters(n_samples: usize) -> impl ExactSizeIterator<Item = f64> + Clone {
    (0..n_samples).map(move |i| TAU * i as f64 / n_samples as f64)
}

/// Sampled probabilities along one plane, with the setup that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularScan {
    plane: ScanPlane,
    setup: ScanSetup,
    samples: Vec<ScanSample>,
}

impl AngularScan {
    /// Assembles a scan from samples computed elsewhere (e.g. in parallel).
    pub fn from_samples(plane: ScanPlane, setup: ScanSetup, samples: Vec<ScanSample>) -> Result<Self> {
        if samples.len() < MIN_SCAN_SAMPLES {
            return Err(Error::TooFewSamples(samples.len()));
        }
        debug_assert!(samples.windows(2).all(|w| w[0].param < w[1].param));
        debug_assert!(samples.iter().all(|s| s.probability >= 0.0));
        Ok(Self { plane, setup, samples })
    }

    pub fn plane(&self) -> ScanPlane {
        self.plane
    }

    pub fn setup(&self) -> &ScanSetup {
        &self.setup
    }

    pub fn mode(&self) -> DetectionMode {
        self.setup.mode
    }

    pub fn samples(&self) -> &[ScanSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.probability)
    }

    pub fn max_probability(&self) -> f64 {
        self.probabilities().fold(0.0, f64::max)
    }

    /// Re-evaluates the underlying model at an arbitrary scan parameter.
    pub fn evaluate_at(&self, param: f64) -> f64 {
        self.setup.evaluate(self.plane.direction_at(param))
    }

    /// Maximum of the electric-only (`zeta = 0`) scattering scan on the same
    /// sampling, frame and sensitivity. Used as the `relative` normalization.
    pub fn glauber_reference_max(&self) -> f64 {
        let spec = self
            .setup
            .spec
            .with_mixing(Complex64::new(0.0, 0.0))
            .expect("zero mixing keeps a valid spec");
        let reference = ScanSetup::new(
            self.setup.config.clone(),
            spec,
            self.setup.frame,
            DetectionMode::Scattering,
        );
        self.samples
            .iter()
            .map(|s| reference.evaluate(s.direction))
            .fold(0.0, f64::max)
    }

    fn spacing(&self) -> f64 {
        TAU / self.samples.len() as f64
    }
}

/// Samples `plane` at `n_samples` equispaced parameters.
pub fn scan_plane(
    config: &FieldConfig,
    spec: &DetectorSpec,
    frame: DetectorFrame,
    mode: DetectionMode,
    plane: ScanPlane,
    n_samples: usize,
) -> Result<AngularScan> {
    if n_samples < MIN_SCAN_SAMPLES {
        return Err(Error::TooFewSamples(n_samples));
    }
    let setup = ScanSetup::new(config.clone(), *spec, frame, mode);
    let samples = scan_parameters(n_samples).map(|t| setup.sample(plane, t)).collect();
    AngularScan::from_samples(plane, setup, samples)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityReport {
    /// `(p_max - p_min) / (p_max + p_min)`, or 0 for an identically zero scan.
    pub visibility: f64,
    pub p_max: f64,
    pub p_min: f64,
    pub argmax: Direction,
    pub argmin: Direction,
    pub argmax_param: f64,
    pub argmin_param: f64,
}

/// Fringe visibility over the sampled points. Ties resolve to the first
/// sample.
pub fn visibility(scan: &AngularScan) -> Result<VisibilityReport> {
    let first = scan.samples.first().ok_or(Error::EmptyScan)?;
    let (mut hi, mut lo) = (first, first);
    for s in &scan.samples[1..] {
        if s.probability > hi.probability {
            hi = s;
        }
        if s.probability < lo.probability {
            lo = s;
        }
    }
    let sum = hi.probability + lo.probability;
    let v = if sum > 0.0 {
        ((hi.probability - lo.probability) / sum).clamp(0.0, 1.0)
    } else {
        0.0
    };
    Ok(VisibilityReport {
        visibility: v,
        p_max: hi.probability,
        p_min: lo.probability,
        argmax: hi.direction,
        argmin: lo.direction,
        argmax_param: hi.param,
        argmin_param: lo.param,
    })
}

/// Scan parameters of the zeros of `scan`.
///
/// Every sampled local minimum (the scan is treated as closed) is refined by
/// golden-section search over its two neighbouring intervals using the
/// scan's own model. A refined minimum below `tol * p_max` is a zero; zeros
/// closer than one sample spacing are merged.
pub fn zero_locations(scan: &AngularScan, tol: f64) -> Result<Vec<f64>> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance);
    }
    let n = scan.samples.len();
    if n == 0 {
        return Err(Error::EmptyScan);
    }
    let p_max = scan.max_probability();
    let threshold = tol * p_max;
    let h = scan.spacing();
    let p = |i: usize| scan.samples[i].probability;

    let mut zeros: Vec<f64> = Vec::new();
    for i in 0..n {
        let (prev, next) = ((i + n - 1) % n, (i + 1) % n);
        if p(i) > p(prev) || p(i) > p(next) {
            continue;
        }
        let t0 = scan.samples[i].param;
        let (t_min, v_min) = golden_section_min(|t| scan.evaluate_at(t), t0 - h, t0 + h);
        let (t_best, v_best) = if v_min < p(i) { (t_min, v_min) } else { (t0, p(i)) };
        if v_best < threshold {
            zeros.push(wrap_angle(t_best));
        }
    }

    zeros.sort_by(|a, b| a.total_cmp(b));
    let mut merged: Vec<f64> = Vec::with_capacity(zeros.len());
    for z in zeros {
        match merged.last() {
            Some(&last) if z - last <= h => {}
            _ => merged.push(z),
        }
    }
    if merged.len() > 1 {
        let wrap = merged[0] + TAU - merged[merged.len() - 1];
        if wrap <= h {
            merged.pop();
        }
    }
    Ok(merged)
}

/// Number of interference zeros in `scan`; see [`zero_locations`].
pub fn count_zeros(scan: &AngularScan, tol: f64) -> Result<usize> {
    zero_locations(scan, tol).map(|z| z.len())
}

fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `sum_i w_i P(d_i)` over a sphere grid.
pub fn total_power(
    config: &FieldConfig,
    spec: &DetectorSpec,
    frame: DetectorFrame,
    mode: DetectionMode,
    grid: &SphereGrid,
) -> f64 {
    grid.integrate(|d| evaluate(config, spec, frame, mode, d))
}

/// Pointwise comparison of `a` against the reference `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanComparison {
    pub max_abs_deviation: f64,
    /// `max |a - b| / b` over samples where `b` is not negligible.
    pub max_relative_deviation: f64,
    pub mean_relative_deviation: f64,
    /// Mean of `a / b` over the same samples.
    pub ratio_mean: f64,
    /// `(max(a/b) - min(a/b)) / |mean(a/b)|`; 0 for a constant ratio.
    pub ratio_spread: f64,
    /// Samples entering the relative statistics.
    pub compared: usize,
}

/// Samples where `b` falls below this fraction of its maximum are left out of
/// the relative and ratio statistics.
pub const COMPARE_FLOOR: f64 = 1e-12;

pub fn compare_scans(a: &AngularScan, b: &AngularScan) -> Result<ScanComparison> {
    if a.plane != b.plane
        || a.samples.len() != b.samples.len()
        || a.samples.iter().zip(&b.samples).any(|(x, y)| x.param != y.param)
    {
        return Err(Error::SamplingMismatch);
    }
    if a.samples.is_empty() {
        return Err(Error::EmptyScan);
    }
    let floor = COMPARE_FLOOR * b.max_probability();
    let mut out = ScanComparison {
        max_abs_deviation: 0.0,
        max_relative_deviation: 0.0,
        mean_relative_deviation: 0.0,
        ratio_mean: 0.0,
        ratio_spread: 0.0,
        compared: 0,
    };
    let (mut r_lo, mut r_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut rel_sum = 0.0;
    let mut ratio_sum = 0.0;
    for (x, y) in a.samples.iter().zip(&b.samples) {
        let diff = (x.probability - y.probability).abs();
        out.max_abs_deviation = out.max_abs_deviation.max(diff);
        if y.probability > floor && y.probability > 0.0 {
            let rel = diff / y.probability;
            let ratio = x.probability / y.probability;
            out.max_relative_deviation = out.max_relative_deviation.max(rel);
            rel_sum += rel;
            ratio_sum += ratio;
            r_lo = r_lo.min(ratio);
            r_hi = r_hi.max(ratio);
            out.compared += 1;
        }
    }
    if out.compared > 0 {
        let k = out.compared as f64;
        out.mean_relative_deviation = rel_sum / k;
        out.ratio_mean = ratio_sum / k;
        out.ratio_spread = if out.ratio_mean != 0.0 {
            (r_hi - r_lo) / out.ratio_mean.abs()
        } else {
            0.0
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::build_sphere_grid;

    fn spec(re: f64, im: f64) -> DetectorSpec {
        DetectorSpec::with_zeta(Complex64::new(re, im)).unwrap()
    }

    fn scan(cfg: &FieldConfig, zeta: f64, mode: DetectionMode, plane: ScanPlane, n: usize) -> AngularScan {
        scan_plane(cfg, &spec(zeta, 0.0), DetectorFrame::Local, mode, plane, n).unwrap()
    }

    fn zero_scan() -> AngularScan {
        let setup = ScanSetup::new(
            FieldConfig::single_dipole(),
            spec(0.0, 0.0),
            DetectorFrame::Local,
            DetectionMode::Scattering,
        );
        let samples = scan_parameters(16)
            .map(|t| ScanSample {
                param: t,
                direction: ScanPlane::Xy.direction_at(t),
                probability: 0.0,
            })
            .collect();
        AngularScan::from_samples(ScanPlane::Xy, setup, samples).unwrap()
    }

    #[test]
    fn xz_parameter_mapping() {
        let d = ScanPlane::Xz.direction_at(0.0);
        assert_eq!((d.theta(), d.phi()), (0.0, 0.0));
        let d = ScanPlane::Xz.direction_at(FRAC_PI_2);
        assert_eq!((d.theta(), d.phi()), (FRAC_PI_2, 0.0));
        let d = ScanPlane::Xz.direction_at(PI);
        assert_eq!((d.theta(), d.phi()), (PI, 0.0));
        let d = ScanPlane::Xz.direction_at(1.5 * PI);
        assert!((d.theta() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(d.phi(), PI);
        let d = ScanPlane::Xz.direction_at(TAU);
        assert_eq!((d.theta(), d.phi()), (0.0, 0.0));
    }

    #[test]
    fn parse_tags() {
        assert_eq!("xy".parse::<ScanPlane>().unwrap(), ScanPlane::Xy);
        assert!(matches!("yz".parse::<ScanPlane>(), Err(Error::UnknownPlane(_))));
        assert_eq!(
            "absorbed-particle".parse::<DetectionMode>().unwrap(),
            DetectionMode::AbsorbedParticle
        );
        assert!(matches!(
            "absorbed".parse::<DetectionMode>(),
            Err(Error::UnknownMode(_))
        ));
    }

    #[test]
    fn rejects_short_scans() {
        let cfg = FieldConfig::dipole_pair(3.0);
        assert_eq!(
            scan_plane(
                &cfg,
                &spec(0.0, 0.0),
                DetectorFrame::Local,
                DetectionMode::Scattering,
                ScanPlane::Xy,
                7
            ),
            Err(Error::TooFewSamples(7))
        );
    }

    #[test]
    fn xy_maxima_are_broadside() {
        // oracle: argmax of cos^2(3 pi cos(phi)) over a dense sampling
        let n = 7200;
        let best = (0..n)
            .map(|i| TAU * i as f64 / n as f64)
            .map(|phi| (phi, libm::pow(libm::cos(3.0 * PI * libm::cos(phi)), 2.0)))
            .fold((0.0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        assert!(best.1 > 1.0 - 1e-15);

        let s = scan(
            &FieldConfig::dipole_pair(3.0),
            0.0,
            DetectionMode::Scattering,
            ScanPlane::Xy,
            720,
        );
        let p_max = s.max_probability();
        for target in [FRAC_PI_2, 1.5 * PI] {
            let sample = s.samples().iter().find(|x| (x.param - target).abs() < 1e-12).unwrap();
            assert!((sample.probability - p_max).abs() < 1e-12);
        }
        assert!((p_max - 4.0).abs() < 1e-12);
    }

    #[test]
    fn visibility_examples() {
        let pair = FieldConfig::dipole_pair(3.0);
        let v = visibility(&scan(&pair, 0.0, DetectionMode::Scattering, ScanPlane::Xy, 720)).unwrap();
        assert!((v.visibility - 1.0).abs() < 1e-12);
        let v = visibility(&scan(&pair, -1.0, DetectionMode::AbsorbedParticle, ScanPlane::Xy, 720)).unwrap();
        assert!(v.visibility < 1e-12);
        let v = visibility(&scan(
            &FieldConfig::single_dipole(),
            0.0,
            DetectionMode::Scattering,
            ScanPlane::Xy,
            360,
        ))
        .unwrap();
        assert!(v.visibility < 1e-12);
        assert_eq!(visibility(&zero_scan()).unwrap().visibility, 0.0);
    }

    #[test]
    fn zero_counts() {
        let tol = DEFAULT_ZERO_TOLERANCE;
        let pair = FieldConfig::dipole_pair(3.0);
        let s = scan(&pair, 0.0, DetectionMode::Scattering, ScanPlane::Xy, 720);
        let zeros = zero_locations(&s, tol).unwrap();
        assert_eq!(zeros.len(), 12);
        // oracle: cos(phi) in {+-1/6, +-1/2, +-5/6}
        let mut expected: Vec<f64> = [1.0 / 6.0, 0.5, 5.0 / 6.0, -1.0 / 6.0, -0.5, -5.0 / 6.0]
            .iter()
            .flat_map(|&c| {
                let a = libm::acos(c);
                [a, TAU - a]
            })
            .collect();
        expected.sort_by(|a, b| a.total_cmp(b));
        for (z, e) in zeros.iter().zip(&expected) {
            assert!((z - e).abs() < 1e-6, "{z} vs {e}");
        }

        let single = scan(
            &FieldConfig::single_dipole(),
            0.0,
            DetectionMode::Scattering,
            ScanPlane::Xy,
            360,
        );
        assert_eq!(count_zeros(&single, tol).unwrap(), 0);

        let half = scan(
            &FieldConfig::dipole_pair(0.5),
            0.0,
            DetectionMode::Scattering,
            ScanPlane::Xy,
            360,
        );
        let z = zero_locations(&half, tol).unwrap();
        assert_eq!(z.len(), 2);
        assert!(z[0] < 1e-6 && (z[1] - PI).abs() < 1e-6);

        assert_eq!(count_zeros(&half, 0.0), Err(Error::InvalidTolerance));
    }

    #[test]
    fn zeros_found_between_samples() {
        // 100 samples never land on cos(phi) = 1/6 exactly
        let s = scan(
            &FieldConfig::dipole_pair(3.0),
            0.0,
            DetectionMode::Scattering,
            ScanPlane::Xy,
            100,
        );
        assert_eq!(count_zeros(&s, DEFAULT_ZERO_TOLERANCE).unwrap(), 12);
    }

    #[test]
    fn flat_and_null_scans_have_no_zeros() {
        let pair = FieldConfig::dipole_pair(3.0);
        let flat = scan(&pair, -1.0, DetectionMode::AbsorbedParticle, ScanPlane::Xy, 180);
        assert_eq!(count_zeros(&flat, DEFAULT_ZERO_TOLERANCE).unwrap(), 0);
        assert_eq!(count_zeros(&zero_scan(), DEFAULT_ZERO_TOLERANCE).unwrap(), 0);
    }

    #[test]
    fn xz_scan_has_polar_nulls() {
        let s = scan(
            &FieldConfig::single_dipole(),
            0.0,
            DetectionMode::Scattering,
            ScanPlane::Xz,
            360,
        );
        let z = zero_locations(&s, DEFAULT_ZERO_TOLERANCE).unwrap();
        assert_eq!(z.len(), 2);
        assert!(z[0] < 1e-9 && (z[1] - PI).abs() < 1e-9);
    }

    #[test]
    fn power_examples() {
        let grid = build_sphere_grid(64, 128).unwrap();
        let g0 = spec(0.0, 0.0);
        let p1 = total_power(
            &FieldConfig::single_dipole(),
            &g0,
            DetectorFrame::Local,
            DetectionMode::Scattering,
            &grid,
        );
        assert!((p1 - 8.0 * PI / 3.0).abs() < 1e-10);

        let pair = FieldConfig::dipole_pair(3.0);
        let p0 = total_power(&pair, &g0, DetectorFrame::Local, DetectionMode::Scattering, &grid);
        let p_one = total_power(
            &pair,
            &spec(1.0, 0.0),
            DetectorFrame::Local,
            DetectionMode::Scattering,
            &grid,
        );
        assert!((p_one - 4.0 * p0).abs() < 1e-12 * p_one);

        let coincident = total_power(
            &FieldConfig::dipole_pair(0.0),
            &g0,
            DetectorFrame::Local,
            DetectionMode::Scattering,
            &grid,
        );
        assert!((coincident - 4.0 * p1).abs() < 1e-12 * coincident);
    }

    #[test]
    fn comparisons() {
        let pair = FieldConfig::dipole_pair(3.0);
        let s0 = scan(&pair, 0.0, DetectionMode::Scattering, ScanPlane::Xy, 720);
        let same = compare_scans(&s0, &s0).unwrap();
        assert_eq!(same.max_abs_deviation, 0.0);
        assert_eq!(same.max_relative_deviation, 0.0);

        let s1 = scan(&pair, 1.0, DetectionMode::Scattering, ScanPlane::Xy, 720);
        let r = compare_scans(&s1, &s0).unwrap();
        assert!((r.ratio_mean - 4.0).abs() < 1e-12);
        assert!(r.ratio_spread < 1e-12);

        let absorbed = scan(&pair, 0.0, DetectionMode::AbsorbedCoherent, ScanPlane::Xy, 720);
        let r = compare_scans(&absorbed, &s0).unwrap();
        assert!((r.ratio_mean - 0.5).abs() < 1e-15);
        assert!(r.ratio_spread < 1e-15);

        let other = scan(&pair, 0.0, DetectionMode::Scattering, ScanPlane::Xy, 360);
        assert_eq!(compare_scans(&other, &s0), Err(Error::SamplingMismatch));
        let xz = scan(&pair, 0.0, DetectionMode::Scattering, ScanPlane::Xz, 720);
        assert_eq!(compare_scans(&xz, &s0), Err(Error::SamplingMismatch));
    }

    #[test]
    fn glauber_reference_ignores_mixing() {
        let pair = FieldConfig::dipole_pair(3.0);
        let s = scan(&pair, -1.0, DetectionMode::AbsorbedParticle, ScanPlane::Xy, 720);
        assert!((s.glauber_reference_max() - 4.0).abs() < 1e-12);
    }
}

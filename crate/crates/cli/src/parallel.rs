//! Multi-threaded scans. Each sample is an independent pure evaluation and
//! results are collected in parameter order, so the output is identical to
//! [`emdetect_core::analysis::scan_plane`].

use emdetect_core::analysis::{scan_parameters, AngularScan, DetectionMode, ScanPlane, ScanSetup, MIN_SCAN_SAMPLES};
use emdetect_core::detector::{DetectorFrame, DetectorSpec};
use emdetect_core::fields::FieldConfig;
use emdetect_core::math::SphereGrid;
use emdetect_core::{Error, Result};
use rayon::prelude::*;

pub fn scan_plane_parallel(
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
    let params: Vec<f64> = scan_parameters(n_samples).collect();
    let samples = params.par_iter().map(|&t| setup.sample(plane, t)).collect();
    AngularScan::from_samples(plane, setup, samples)
}

/// Grid quadrature with per-node values computed in parallel and summed in
/// node order.
pub fn total_power_parallel(
    config: &FieldConfig,
    spec: &DetectorSpec,
    frame: DetectorFrame,
    mode: DetectionMode,
    grid: &SphereGrid,
) -> f64 {
    let values: Vec<f64> = grid
        .nodes()
        .par_iter()
        .map(|&(d, w)| w * emdetect_core::analysis::evaluate(config, spec, frame, mode, d))
        .collect();
    values.iter().sum()
}

//! Snapshot mosaic hyperspectral imaging: acquisition simulation, bilinear
//! demosaicking with spectral correction, sRGB and oxygen-saturation
//! rendering, and reconstruction metrics.
//!
//! ```
//! use snapdemosaic::sensor::{build_synthetic_sensor, fit_calibration, SyntheticSensorParams};
//! use snapdemosaic::{demosaic_pipeline, simulate_spectral, subsample, synth, Wavelengths};
//!
//! let sensor = build_synthetic_sensor(&SyntheticSensorParams::default()).unwrap();
//! let calib = fit_calibration(&sensor, sensor.grid()).unwrap();
//! let wl = Wavelengths::stepped(470.0, 620.0, 2.0).unwrap();
//! let scene = synth::reflectance_scene(&synth::SceneParams::new(32, 32, 1), &wl).unwrap();
//! let mosaic = subsample(&simulate_spectral(&scene, &sensor).unwrap(), sensor.pattern()).unwrap();
//! let cube = demosaic_pipeline(&mosaic, &sensor, &calib.matrix, None).unwrap();
//! assert_eq!(cube.shape(), (32, 32, 16));
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod colorimetry;
pub mod cube;
pub mod demosaic;
pub mod error;
pub mod frame;
pub mod io;
pub mod metrics;
pub mod mosaic;
pub mod sensor;
mod simd;
pub mod spectrum;
pub mod synth;

pub use colorimetry::{cube_to_srgb, oxygenation_map, ExtinctionTable, OxyMap, RgbImage};
pub use cube::{Hypercube, Wavelengths};
pub use demosaic::{
    apply_correction, apply_correction_clamped, bilinear_demosaic, demosaic_pipeline,
};
pub use error::{Error, Result};
pub use metrics::{aggregate, evaluate, QualityRecord, QualityReport};
pub use mosaic::{MosaicImage, MosaicPattern};
pub use sensor::{
    fit_calibration, lorentzian, simulate_ideal, simulate_spectral, subsample, white_balance,
    CalibrationFit, CalibrationMatrix, IdealBandSpec, SensorModel,
};
pub use spectrum::ResponseCurve;

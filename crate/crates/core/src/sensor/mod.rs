//! Snapshot sensor model and acquisition simulation.
//!
//! A [`SensorModel`] pairs a mosaic layout with the measured response of each
//! filter and the idealised Lorentzian bands a corrected measurement should
//! reproduce. From a high-resolution cube the simulation produces the
//! intermediate cube (measured responses), the ideal cube (Lorentzian
//! responses) and the mosaic frame the camera would record.

mod calibration;
mod lorentzian;
mod simulate;
mod synthetic;

pub use calibration::{fit_calibration, CalibrationFit, CalibrationMatrix};
pub use lorentzian::{lorentzian, IdealBandSpec};
pub use simulate::{
    simulate_ideal, simulate_spectral, subsample, white_balance, SpectralProjector,
    FLAT_FIELD_EPSILON,
};
pub use synthetic::{build_synthetic_sensor, SyntheticSensorParams, HARMONIC_OFFSET, SYNTHETIC_QE};

use crate::cube::Wavelengths;
use crate::error::{Error, Result};
use crate::mosaic::MosaicPattern;
use crate::spectrum::ResponseCurve;

#[derive(Debug, Clone, PartialEq)]
pub struct SensorModel {
    pattern: MosaicPattern,
    grid: Wavelengths,
    centers: Wavelengths,
    measured: Vec<ResponseCurve>,
    ideal: Vec<IdealBandSpec>,
}

impl SensorModel {
    /// `measured[k]` is the response of band `k`, all sampled on one grid;
    /// `centers[k]` is the nominal wavelength labelling band `k` in
    /// intermediate cubes. `ideal` must be sorted by centre wavelength.
    pub fn new(
        pattern: MosaicPattern,
        centers: Wavelengths,
        measured: Vec<ResponseCurve>,
        ideal: Vec<IdealBandSpec>,
    ) -> Result<Self> {
        let bands = pattern.bands();
        if measured.len() != bands {
            return Err(Error::SizeMismatch {
                field: "measured",
                expected: bands,
                found: measured.len(),
            });
        }
        if centers.len() != bands {
            return Err(Error::SizeMismatch {
                field: "centers",
                expected: bands,
                found: centers.len(),
            });
        }
        let grid = measured[0].wavelengths().clone();
        if measured.iter().any(|c| c.wavelengths() != &grid) {
            return Err(Error::InvalidParameter {
                field: "measured",
                reason: "all response curves must share one sampling grid".into(),
            });
        }
        if ideal.len() > bands {
            return Err(Error::InvalidParameter {
                field: "ideal",
                reason: format!(
                    "{} ideal bands exceed {} measured bands",
                    ideal.len(),
                    bands
                ),
            });
        }
        let (lo, hi) = (grid.first(), grid.last());
        for (k, spec) in ideal.iter().enumerate() {
            if spec.lambda0 < lo || spec.lambda0 > hi {
                return Err(Error::InvalidParameter {
                    field: "ideal",
                    reason: format!(
                        "band {k} centre {} nm outside sensor range {lo}..{hi}",
                        spec.lambda0
                    ),
                });
            }
            if k > 0 && spec.lambda0 <= ideal[k - 1].lambda0 {
                return Err(Error::InvalidParameter {
                    field: "ideal",
                    reason: "ideal bands must be sorted by increasing centre".into(),
                });
            }
        }
        Ok(SensorModel {
            pattern,
            grid,
            centers,
            measured,
            ideal,
        })
    }

    pub fn pattern(&self) -> &MosaicPattern {
        &self.pattern
    }

    /// Number of measured bands (`n²`).
    pub fn measured_bands(&self) -> usize {
        self.measured.len()
    }

    /// Number of ideal bands.
    pub fn ideal_bands(&self) -> usize {
        self.ideal.len()
    }

    pub fn measured(&self) -> &[ResponseCurve] {
        &self.measured
    }

    pub fn ideal(&self) -> &[IdealBandSpec] {
        &self.ideal
    }

    /// Shared sampling grid of the response curves.
    pub fn grid(&self) -> &Wavelengths {
        &self.grid
    }

    /// Spectral range `(min, max)` in nm covered by the responses.
    pub fn range(&self) -> (f64, f64) {
        (self.grid.first(), self.grid.last())
    }

    /// Wavelength labels of the measured bands.
    pub fn measured_centers(&self) -> &Wavelengths {
        &self.centers
    }

    /// Wavelength labels of the ideal bands.
    pub fn ideal_centers(&self) -> Result<Wavelengths> {
        if self.ideal.is_empty() {
            return Err(Error::EmptyIdealBands);
        }
        Wavelengths::new(self.ideal.iter().map(|s| s.lambda0).collect())
    }

    /// Ideal band `k` as a curve on the sensor's sampling grid, so that it
    /// goes through the same resampling as the measured curves.
    pub fn ideal_curve(&self, k: usize) -> Result<ResponseCurve> {
        let spec = self.ideal[k];
        ResponseCurve::from_fn(self.grid.clone(), |l| lorentzian(l, &spec))
    }

    pub fn ideal_curves(&self) -> Result<Vec<ResponseCurve>> {
        (0..self.ideal.len()).map(|k| self.ideal_curve(k)).collect()
    }
}

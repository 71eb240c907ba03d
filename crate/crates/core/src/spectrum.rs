//! Sampled spectral response curves.

use crate::cube::Wavelengths;
use crate::error::{Error, Result};

/// Upper bound on a response sample; leaves headroom above unit quantum
/// efficiency for summed leakage lobes.
pub const MAX_RESPONSE: f64 = 1.5;

/// A filter's quantum efficiency sampled on a wavelength grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseCurve {
    wavelengths: Wavelengths,
    response: Vec<f64>,
}

impl ResponseCurve {
    pub fn new(wavelengths: Wavelengths, response: Vec<f64>) -> Result<Self> {
        if wavelengths.len() < 2 {
            return Err(Error::InvalidParameter {
                field: "response",
                reason: "a response curve needs at least 2 samples".into(),
            });
        }
        if response.len() != wavelengths.len() {
            return Err(Error::SizeMismatch {
                field: "response",
                expected: wavelengths.len(),
                found: response.len(),
            });
        }
        for (index, &r) in response.iter().enumerate() {
            if !r.is_finite() {
                return Err(Error::NonFinite {
                    field: "response",
                    index,
                });
            }
            if !(0.0..=MAX_RESPONSE).contains(&r) {
                return Err(Error::InvalidParameter {
                    field: "response",
                    reason: format!("sample {index} = {r} outside [0, {MAX_RESPONSE}]"),
                });
            }
        }
        Ok(ResponseCurve {
            wavelengths,
            response,
        })
    }

    /// Samples `f` on `wavelengths`.
    pub fn from_fn(wavelengths: Wavelengths, f: impl Fn(f64) -> f64) -> Result<Self> {
        let response = wavelengths.values().iter().map(|&l| f(l)).collect();
        Self::new(wavelengths, response)
    }

    pub fn wavelengths(&self) -> &Wavelengths {
        &self.wavelengths
    }

    pub fn response(&self) -> &[f64] {
        &self.response
    }

    /// Piecewise-linear value at `lambda`; zero outside the sampled support.
    pub fn value_at(&self, lambda: f64) -> f64 {
        let grid = self.wavelengths.values();
        let last = grid.len() - 1;
        if !(lambda >= grid[0] && lambda <= grid[last]) {
            return 0.0;
        }
        // first knot strictly greater than lambda
        let hi = grid.partition_point(|&g| g <= lambda);
        if hi == 0 {
            return self.response[0];
        }
        let lo = hi - 1;
        if grid[lo] == lambda || hi > last {
            return self.response[lo];
        }
        let t = (lambda - grid[lo]) / (grid[hi] - grid[lo]);
        self.response[lo] + t * (self.response[hi] - self.response[lo])
    }

    /// Wavelength of the largest sample (first one on ties).
    pub fn peak_wavelength(&self) -> f64 {
        let mut best = 0;
        for (i, &r) in self.response.iter().enumerate() {
            if r > self.response[best] {
                best = i;
            }
        }
        self.wavelengths.values()[best]
    }

    /// Trapezoidal integral over the curve's own grid.
    pub fn area(&self) -> f64 {
        self.wavelengths
            .trapezoid_weights()
            .iter()
            .zip(&self.response)
            .map(|(w, r)| w * r)
            .sum()
    }
}

/// Resamples `curve` onto `target` by linear interpolation, with zero response
/// outside the curve's support.
pub fn resample_curve(curve: &ResponseCurve, target: &Wavelengths) -> Vec<f64> {
    target.values().iter().map(|&l| curve.value_at(l)).collect()
}

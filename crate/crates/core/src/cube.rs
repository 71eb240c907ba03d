//! Hypercubes and their wavelength axis.
//!
//! Samples are stored band-interleaved-by-pixel: the index of `(x, y, band)`
//! is `(y * width + x) * bands + band`, so each pixel's spectrum is a
//! contiguous slice.

use crate::error::{Error, Result};

/// Exclusive bounds on any wavelength sample, in nm.
pub const MIN_WAVELENGTH_NM: f64 = 200.0;
pub const MAX_WAVELENGTH_NM: f64 = 2500.0;

/// Strictly increasing wavelength samples in nm.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavelengths(Vec<f64>);

impl Wavelengths {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("wavelengths"));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    field: "wavelengths",
                    index,
                });
            }
            if value <= MIN_WAVELENGTH_NM || value >= MAX_WAVELENGTH_NM {
                return Err(Error::WavelengthOutOfRange { index, value });
            }
            if index > 0 && value <= values[index - 1] {
                return Err(Error::NonIncreasingWavelengths { index });
            }
        }
        Ok(Wavelengths(values))
    }

    /// `count` samples evenly spaced over `[start, end]`, both ends included.
    pub fn linspace(start: f64, end: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidParameter {
                field: "count",
                reason: format!("need at least 2 samples, got {count}"),
            });
        }
        let step = (end - start) / (count - 1) as f64;
        let mut values: Vec<f64> = (0..count).map(|i| start + step * i as f64).collect();
        values[count - 1] = end;
        Self::new(values)
    }

    /// Samples `start, start + step, ...` up to and including `end` (within
    /// half a step).
    pub fn stepped(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(end > start) {
            return Err(Error::InvalidParameter {
                field: "step",
                reason: format!("cannot step {start}..{end} by {step}"),
            });
        }
        let count = ((end - start) / step + 0.5).floor() as usize + 1;
        Self::new((0..count).map(|i| start + step * i as f64).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.0[0]
    }

    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    /// Trapezoidal quadrature weights for this grid.
    ///
    /// A single sample gets unit weight so that degenerate one-band cubes
    /// still have a well-defined (point) integral.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let v = &self.0;
        let n = v.len();
        if n == 1 {
            return vec![1.0];
        }
        (0..n)
            .map(|i| {
                let lo = v[i.saturating_sub(1)];
                let hi = v[(i + 1).min(n - 1)];
                0.5 * (hi - lo)
            })
            .collect()
    }

    /// The same grid rounded to f32 precision, as stored in cube files.
    pub fn to_f32_precision(&self) -> Result<Self> {
        Self::new(self.0.iter().map(|&v| v as f32 as f64).collect())
    }
}

/// A spatial-spectral cube of relative reflectance values.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypercube {
    width: usize,
    height: usize,
    wavelengths: Wavelengths,
    data: Vec<f32>,
}

impl Hypercube {
    /// Wavelengths are rounded to f32 precision so that every cube is exactly
    /// representable in the exchange format.
    pub fn new(
        width: usize,
        height: usize,
        wavelengths: Wavelengths,
        data: Vec<f32>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter {
                field: "width/height",
                reason: format!("cube must be non-empty, got {width}x{height}"),
            });
        }
        let wavelengths = wavelengths.to_f32_precision()?;
        let expected = width * height * wavelengths.len();
        if data.len() != expected {
            return Err(Error::SizeMismatch {
                field: "data",
                expected,
                found: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                field: "data",
                index,
            });
        }
        Ok(Hypercube {
            width,
            height,
            wavelengths,
            data,
        })
    }

    pub fn filled(
        width: usize,
        height: usize,
        wavelengths: Wavelengths,
        value: f32,
    ) -> Result<Self> {
        let n = width * height * wavelengths.len();
        Self::new(width, height, wavelengths, vec![value; n])
    }

    /// Builds a cube from `f(x, y, band)`.
    pub fn from_fn(
        width: usize,
        height: usize,
        wavelengths: Wavelengths,
        mut f: impl FnMut(usize, usize, usize) -> f32,
    ) -> Result<Self> {
        let bands = wavelengths.len();
        let mut data = Vec::with_capacity(width * height * bands);
        for y in 0..height {
            for x in 0..width {
                for b in 0..bands {
                    data.push(f(x, y, b));
                }
            }
        }
        Self::new(width, height, wavelengths, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bands(&self) -> usize {
        self.wavelengths.len()
    }

    pub fn wavelengths(&self) -> &Wavelengths {
        &self.wavelengths
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    pub fn pixel(&self, x: usize, y: usize) -> &[f32] {
        let b = self.bands();
        let start = (y * self.width + x) * b;
        &self.data[start..start + b]
    }

    pub fn get(&self, x: usize, y: usize, band: usize) -> f32 {
        self.data[(y * self.width + x) * self.bands() + band]
    }

    /// One band as a row-major plane.
    pub fn band_plane(&self, band: usize) -> Vec<f32> {
        self.data
            .iter()
            .skip(band)
            .step_by(self.bands())
            .copied()
            .collect()
    }

    pub fn same_shape(&self, other: &Hypercube) -> bool {
        self.width == other.width && self.height == other.height && self.bands() == other.bands()
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.width, self.height, self.bands())
    }

    /// Elementwise map; the result must stay finite.
    pub fn map(&self, f: impl Fn(f32) -> f32) -> Result<Self> {
        Self::new(
            self.width,
            self.height,
            self.wavelengths.clone(),
            self.data.iter().map(|&v| f(v)).collect(),
        )
    }
}

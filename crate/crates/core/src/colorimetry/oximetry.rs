//! Oxygen saturation by linear Beer–Lambert unmixing.
//!
//! Per pixel, absorbance `A_b = -ln(max(R_b, ε))` is fitted as
//! `c_HbO2 · e_HbO2(λ_b) + c_Hb · e_Hb(λ_b) + offset` by least squares and
//! `SO2 = c_HbO2 / (c_HbO2 + c_Hb)`. The offset absorbs any wavelength-flat
//! loss (scattering baseline, illumination scale). This is a simplified
//! stand-in for a full tissue-optics model.

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::tables::{hemoglobin_extinction, SpectralTable};
use crate::cube::Hypercube;
use crate::error::{Error, Result};

/// Reflectance floor before taking the logarithm.
pub const ABSORBANCE_FLOOR: f32 = 1e-4;

/// Unknowns of the per-pixel fit.
const UNKNOWNS: usize = 3;

/// Oxy- and deoxyhemoglobin extinction spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtinctionTable {
    table: SpectralTable,
}

impl ExtinctionTable {
    /// `table` column 0 is HbO2, column 1 is Hb.
    pub fn new(table: SpectralTable) -> Result<Self> {
        if table.columns() != 2 {
            return Err(Error::InvalidParameter {
                field: "extinction",
                reason: format!("expected 2 columns (HbO2, Hb), got {}", table.columns()),
            });
        }
        Ok(ExtinctionTable { table })
    }

    /// The bundled hemoglobin spectra, scaled so the largest coefficient is 1.
    /// Saturation does not depend on the common scale.
    pub fn hemoglobin() -> Self {
        let raw = hemoglobin_extinction();
        let max = (0..2)
            .flat_map(|c| raw.column(c).iter().copied())
            .fold(0.0, f64::max);
        ExtinctionTable {
            table: raw.scaled(max),
        }
    }

    pub fn hbo2(&self, lambda: f64) -> Option<f64> {
        self.table.value_at(0, lambda)
    }

    pub fn hb(&self, lambda: f64) -> Option<f64> {
        self.table.value_at(1, lambda)
    }
}

/// Per-pixel oxygen saturation; `None` where the fit finds no hemoglobin.
#[derive(Debug, Clone, PartialEq)]
pub struct OxyMap {
    width: usize,
    height: usize,
    so2: Vec<Option<f32>>,
}

impl OxyMap {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> Option<f32> {
        self.so2[y * self.width + x]
    }

    pub fn values(&self) -> &[Option<f32>] {
        &self.so2
    }

    pub fn valid_fraction(&self) -> f64 {
        self.so2.iter().filter(|v| v.is_some()).count() as f64 / self.so2.len() as f64
    }
}

/// Result of unmixing one pixel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unmixed {
    pub hbo2: f64,
    pub hb: f64,
    pub offset: f64,
}

impl Unmixed {
    /// Threshold on total hemoglobin below which the pixel is invalid,
    /// relative to the absorbance magnitude.
    fn saturation(&self, absorbance_scale: f64) -> Option<f32> {
        let total = self.hbo2 + self.hb;
        if total <= 1e-9 * (1.0 + absorbance_scale) {
            return None;
        }
        Some((self.hbo2 / total).clamp(0.0, 1.0) as f32)
    }
}

/// Least-squares unmixer for a fixed set of band wavelengths.
#[derive(Debug, Clone)]
pub struct Unmixer {
    // cube band indices inside the extinction table
    bands: Vec<usize>,
    // UNKNOWNS x bands.len(), row-major
    pinv: Vec<f64>,
}

impl Unmixer {
    pub fn new(wavelengths: &[f64], extinction: &ExtinctionTable) -> Result<Self> {
        let bands: Vec<usize> = (0..wavelengths.len())
            .filter(|&b| extinction.hbo2(wavelengths[b]).is_some())
            .collect();
        if bands.len() < UNKNOWNS {
            return Err(Error::TooFewBands {
                needed: UNKNOWNS,
                found: bands.len(),
            });
        }
        let design = DMatrix::from_fn(bands.len(), UNKNOWNS, |r, c| {
            let l = wavelengths[bands[r]];
            match c {
                0 => extinction.hbo2(l).unwrap(),
                1 => extinction.hb(l).unwrap(),
                _ => 1.0,
            }
        });
        let svd = design.svd(true, true);
        let (max, min) = (svd.singular_values.max(), svd.singular_values.min());
        if !(min > 1e-10 * max) {
            return Err(Error::InvalidParameter {
                field: "extinction",
                reason: "HbO2, Hb and baseline are not separable on these bands".into(),
            });
        }
        let pinv = svd
            .pseudo_inverse(0.0)
            .map_err(|e| Error::InvalidParameter {
                field: "extinction",
                reason: e.to_string(),
            })?;
        let mut rows = Vec::with_capacity(UNKNOWNS * bands.len());
        for r in 0..UNKNOWNS {
            rows.extend((0..bands.len()).map(|c| pinv[(r, c)]));
        }
        Ok(Unmixer { bands, pinv: rows })
    }

    pub fn unmix(&self, spectrum: &[f32]) -> (Unmixed, f64) {
        let n = self.bands.len();
        let mut coef = [0.0; UNKNOWNS];
        let mut scale: f64 = 0.0;
        for (i, &b) in self.bands.iter().enumerate() {
            let a = -(spectrum[b].max(ABSORBANCE_FLOOR) as f64).ln();
            scale = scale.max(a.abs());
            for (k, c) in coef.iter_mut().enumerate() {
                *c += self.pinv[k * n + i] * a;
            }
        }
        (
            Unmixed {
                hbo2: coef[0],
                hb: coef[1],
                offset: coef[2],
            },
            scale,
        )
    }

    pub fn saturation(&self, spectrum: &[f32]) -> Option<f32> {
        let (u, scale) = self.unmix(spectrum);
        u.saturation(scale)
    }
}

/// SO2 map of a reflectance cube.
pub fn oxygenation_map(cube: &Hypercube, extinction: &ExtinctionTable) -> Result<OxyMap> {
    let unmixer = Unmixer::new(cube.wavelengths().values(), extinction)?;
    let so2 = cube
        .data()
        .par_chunks_exact(cube.bands())
        .map(|px| unmixer.saturation(px))
        .collect();
    Ok(OxyMap {
        width: cube.width(),
        height: cube.height(),
        so2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Wavelengths;

    fn forward(so2: f64, scale: f32) -> Hypercube {
        let w = Wavelengths::stepped(470.0, 620.0, 10.0).unwrap();
        let e = ExtinctionTable::hemoglobin();
        let labels = w.values().to_vec();
        Hypercube::from_fn(2, 2, w, |_, _, b| {
            let l = labels[b];
            scale * (-(so2 * e.hbo2(l).unwrap() + (1.0 - so2) * e.hb(l).unwrap())).exp() as f32
        })
        .unwrap()
    }

    #[test]
    fn recovers_forward_model_saturation() {
        let e = ExtinctionTable::hemoglobin();
        for so2 in [0.0, 0.25, 0.5, 1.0] {
            let map = oxygenation_map(&forward(so2, 1.0), &e).unwrap();
            for v in map.values() {
                assert!((v.unwrap() as f64 - so2).abs() < 1e-6, "{so2}: {v:?}");
            }
        }
    }

    #[test]
    fn invariant_to_cube_scale() {
        let e = ExtinctionTable::hemoglobin();
        let base = oxygenation_map(&forward(0.7, 1.0), &e).unwrap();
        for s in [0.5, 2.0] {
            let scaled = oxygenation_map(&forward(0.7, s), &e).unwrap();
            for (a, b) in base.values().iter().zip(scaled.values()) {
                assert!((a.unwrap() - b.unwrap()).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn flat_reflectance_is_invalid() {
        let cube = Hypercube::filled(3, 1, Wavelengths::stepped(470.0, 620.0, 10.0).unwrap(), 0.4)
            .unwrap();
        let map = oxygenation_map(&cube, &ExtinctionTable::hemoglobin()).unwrap();
        assert!(map.values().iter().all(Option::is_none));
        assert_eq!(map.valid_fraction(), 0.0);

        // least-squares oracle: the offset column alone reproduces a flat
        // absorbance, so the projection onto the hemoglobin columns is zero
        let unmixer =
            Unmixer::new(cube.wavelengths().values(), &ExtinctionTable::hemoglobin()).unwrap();
        let (u, _) = unmixer.unmix(cube.pixel(0, 0));
        assert!(u.hbo2.abs() < 1e-12 && u.hb.abs() < 1e-12);
        assert!((u.offset - -(0.4f32 as f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn needs_three_bands_in_table() {
        let cube = Hypercube::filled(
            1,
            1,
            Wavelengths::new(vec![500.0, 600.0, 700.0]).unwrap(),
            0.4,
        )
        .unwrap();
        assert!(matches!(
            oxygenation_map(&cube, &ExtinctionTable::hemoglobin()),
            Err(Error::TooFewBands {
                needed: 3,
                found: 2
            })
        ));
    }
}

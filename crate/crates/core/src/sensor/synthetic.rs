//! A synthetic stand-in for factory sensor characterisation.
//!
//! Each measured band is the ideal Lorentzian plus cross-talk from its
//! spectral neighbours and a weaker harmonic lobe further to the red, all
//! truncated to the sensor range.

use super::{lorentzian, IdealBandSpec, SensorModel};
use crate::cube::Wavelengths;
use crate::error::{Error, Result};
use crate::mosaic::MosaicPattern;
use crate::spectrum::ResponseCurve;

/// Peak quantum efficiency of every synthetic band.
pub const SYNTHETIC_QE: f64 = 0.85;

/// The harmonic lobe of a band centred at `λ0` sits at `λ0 · (1 + HARMONIC_OFFSET)`.
pub const HARMONIC_OFFSET: f64 = 0.35;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSensorParams {
    /// Mosaic tile edge.
    pub n: usize,
    /// Spectral range `(min, max)` in nm; also the first and last band centre.
    pub range: (f64, f64),
    pub fwhm: f64,
    /// Cross-talk fraction in `[0, 0.5)`.
    pub leakage: f64,
}

impl Default for SyntheticSensorParams {
    fn default() -> Self {
        SyntheticSensorParams {
            n: 4,
            range: (470.0, 620.0),
            fwhm: 15.0,
            leakage: 0.2,
        }
    }
}

pub fn build_synthetic_sensor(params: &SyntheticSensorParams) -> Result<SensorModel> {
    let &SyntheticSensorParams {
        n,
        range,
        fwhm,
        leakage,
    } = params;
    let (lo, hi) = range;
    if n < 2 {
        return Err(Error::InvalidParameter {
            field: "n",
            reason: format!("tile size must be at least 2, got {n}"),
        });
    }
    if !(lo < hi) {
        return Err(Error::InvalidParameter {
            field: "range",
            reason: format!("{lo}..{hi} is empty"),
        });
    }
    if !(0.0..0.5).contains(&leakage) {
        return Err(Error::InvalidParameter {
            field: "leakage",
            reason: format!("{leakage} outside [0, 0.5)"),
        });
    }
    if !(fwhm > 0.0) {
        return Err(Error::InvalidParameter {
            field: "fwhm",
            reason: format!("{fwhm} must be positive"),
        });
    }

    let bands = n * n;
    let centers = Wavelengths::linspace(lo, hi, bands)?;
    let ideal = centers
        .values()
        .iter()
        .map(|&c| IdealBandSpec::new(c, SYNTHETIC_QE, fwhm))
        .collect::<Result<Vec<_>>>()?;
    let harmonics = ideal
        .iter()
        .map(|s| IdealBandSpec::new(s.lambda0 * (1.0 + HARMONIC_OFFSET), SYNTHETIC_QE, fwhm))
        .collect::<Result<Vec<_>>>()?;

    // at least ten samples per FWHM, and no coarser than 1 nm
    let spacing = (fwhm / 10.0).min(1.0);
    let samples = ((hi - lo) / spacing).ceil() as usize + 1;
    let grid = Wavelengths::linspace(lo, hi, samples)?;

    let measured = (0..bands)
        .map(|k| {
            let neighbours: Vec<&IdealBandSpec> = [k.checked_sub(1), Some(k + 1)]
                .into_iter()
                .flatten()
                .filter_map(|j| ideal.get(j))
                .collect();
            ResponseCurve::from_fn(grid.clone(), |l| {
                let cross = neighbours.iter().map(|s| lorentzian(l, s)).sum::<f64>()
                    / neighbours.len() as f64;
                lorentzian(l, &ideal[k])
                    + leakage * cross
                    + 0.5 * leakage * lorentzian(l, &harmonics[k])
            })
        })
        .collect::<Result<Vec<_>>>()?;

    SensorModel::new(MosaicPattern::row_major(n)?, centers, measured, ideal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_by_four_visible_layout() {
        let s = build_synthetic_sensor(&SyntheticSensorParams::default()).unwrap();
        let c = s.ideal_centers().unwrap();
        assert_eq!(c.len(), 16);
        assert_eq!(c.first(), 470.0);
        assert_eq!(c.last(), 620.0);
        for pair in c.values().windows(2) {
            assert!((pair[1] - pair[0] - 10.0).abs() < 1e-12);
        }
        assert_eq!(s.ideal_bands(), 16);
        assert!(s
            .ideal()
            .iter()
            .all(|b| b.qe == SYNTHETIC_QE && b.fwhm == 15.0));
        assert_eq!(s.range(), (470.0, 620.0));
    }

    #[test]
    fn zero_leakage_gives_pure_lorentzians() {
        let s = build_synthetic_sensor(&SyntheticSensorParams {
            leakage: 0.0,
            ..Default::default()
        })
        .unwrap();
        for k in 0..16 {
            assert_eq!(s.measured()[k], s.ideal_curve(k).unwrap());
        }
    }

    #[test]
    fn leakage_adds_response() {
        let clean = build_synthetic_sensor(&SyntheticSensorParams {
            leakage: 0.0,
            ..Default::default()
        })
        .unwrap();
        let leaky = build_synthetic_sensor(&SyntheticSensorParams::default()).unwrap();
        for k in 0..16 {
            let a = clean.measured()[k].response();
            let b = leaky.measured()[k].response();
            assert!(a.iter().zip(b).all(|(a, b)| b >= a));
            assert!(a.iter().zip(b).any(|(a, b)| b > a));
        }
    }

    #[test]
    fn rejects_out_of_domain_parameters() {
        let bad = [
            SyntheticSensorParams {
                n: 1,
                ..Default::default()
            },
            SyntheticSensorParams {
                range: (620.0, 470.0),
                ..Default::default()
            },
            SyntheticSensorParams {
                leakage: 0.5,
                ..Default::default()
            },
            SyntheticSensorParams {
                leakage: -0.1,
                ..Default::default()
            },
            SyntheticSensorParams {
                fwhm: 0.0,
                ..Default::default()
            },
        ];
        for p in bad {
            assert!(build_synthetic_sensor(&p).is_err(), "{p:?}");
        }
    }
}

use rayon::prelude::*;

use super::SensorModel;
use crate::cube::{Hypercube, Wavelengths};
use crate::error::{Error, Result};
use crate::mosaic::{MosaicImage, MosaicPattern};
use crate::spectrum::{resample_curve, ResponseCurve};

/// Denominators of the flat-field quotient below this give a zero output.
pub const FLAT_FIELD_EPSILON: f32 = 1e-6;

/// Area-normalised projection of spectra onto a set of response curves, on a
/// fixed source wavelength grid.
///
/// Output band `k` of a spectrum `h` is `Σ w_i r_k(λ_i) h_i / Σ w_i r_k(λ_i)`
/// with trapezoid weights `w_i`, so a flat spectrum maps to itself.
#[derive(Debug, Clone)]
pub struct SpectralProjector {
    source_bands: usize,
    // per output band: first nonzero source index and the weights from there
    weights: Vec<(usize, Vec<f64>)>,
    norms: Vec<f64>,
}

impl SpectralProjector {
    pub fn new(source: &Wavelengths, curves: &[ResponseCurve]) -> Result<Self> {
        let trapezoid = source.trapezoid_weights();
        let mut weights = Vec::with_capacity(curves.len());
        let mut norms = Vec::with_capacity(curves.len());
        for (band, curve) in curves.iter().enumerate() {
            let full: Vec<f64> = resample_curve(curve, source)
                .iter()
                .zip(&trapezoid)
                .map(|(r, w)| w * r)
                .collect();
            let first = full.iter().position(|&w| w != 0.0);
            let last = full.iter().rposition(|&w| w != 0.0);
            let (Some(first), Some(last)) = (first, last) else {
                return Err(Error::NoOverlap { band });
            };
            let norm: f64 = full[first..=last].iter().sum();
            if !(norm > 0.0) {
                return Err(Error::NoOverlap { band });
            }
            weights.push((first, full[first..=last].to_vec()));
            norms.push(norm);
        }
        Ok(SpectralProjector {
            source_bands: source.len(),
            weights,
            norms,
        })
    }

    pub fn output_bands(&self) -> usize {
        self.weights.len()
    }

    /// Projects one spectrum into `out`.
    pub fn project(&self, spectrum: &[f32], out: &mut [f32]) {
        debug_assert_eq!(spectrum.len(), self.source_bands);
        for ((o, (first, w)), norm) in out.iter_mut().zip(&self.weights).zip(&self.norms) {
            let acc: f64 = w
                .iter()
                .zip(&spectrum[*first..*first + w.len()])
                .map(|(w, &h)| w * h as f64)
                .sum();
            *o = (acc / norm) as f32;
        }
    }

    pub fn apply(&self, cube: &Hypercube, wavelengths: Wavelengths) -> Result<Hypercube> {
        if cube.bands() != self.source_bands {
            return Err(Error::DimensionMismatch {
                expected: self.source_bands,
                found: cube.bands(),
            });
        }
        let out_bands = self.output_bands();
        let mut data = vec![0f32; cube.width() * cube.height() * out_bands];
        data.par_chunks_mut(out_bands * cube.width())
            .zip(cube.data().par_chunks(cube.bands() * cube.width()))
            .for_each(|(out_row, in_row)| {
                for (o, h) in out_row
                    .chunks_mut(out_bands)
                    .zip(in_row.chunks(self.source_bands))
                {
                    self.project(h, o);
                }
            });
        Hypercube::new(cube.width(), cube.height(), wavelengths, data)
    }
}

fn check_overlap(hr: &Hypercube, sensor: &SensorModel) -> Result<()> {
    let (lo, hi) = sensor.range();
    let w = hr.wavelengths();
    if w.last() < lo || w.first() > hi {
        return Err(Error::NoOverlap { band: 0 });
    }
    Ok(())
}

/// Intermediate cube: the high-resolution cube seen through each measured
/// filter response. Output bands are labelled by the sensor's band centres.
pub fn simulate_spectral(hr: &Hypercube, sensor: &SensorModel) -> Result<Hypercube> {
    check_overlap(hr, sensor)?;
    let projector = SpectralProjector::new(hr.wavelengths(), sensor.measured())?;
    projector.apply(hr, sensor.measured_centers().clone())
}

/// Ideal cube: the high-resolution cube seen through the ideal Lorentzian
/// bands.
pub fn simulate_ideal(hr: &Hypercube, sensor: &SensorModel) -> Result<Hypercube> {
    if sensor.ideal_bands() == 0 {
        return Err(Error::EmptyIdealBands);
    }
    check_overlap(hr, sensor)?;
    let projector = SpectralProjector::new(hr.wavelengths(), &sensor.ideal_curves()?)?;
    projector.apply(hr, sensor.ideal_centers()?)
}

/// Keeps, at each pixel, only the band its mosaic filter passes.
pub fn subsample(intermediate: &Hypercube, pattern: &MosaicPattern) -> Result<MosaicImage> {
    if intermediate.bands() != pattern.bands() {
        return Err(Error::DimensionMismatch {
            expected: pattern.bands(),
            found: intermediate.bands(),
        });
    }
    let (w, h) = (intermediate.width(), intermediate.height());
    let mut data = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            data.push(intermediate.get(x, y, pattern.band_at_pixel(x, y)));
        }
    }
    MosaicImage::new(w, h, data, pattern.clone())
}

/// Flat-field correction `(raw - dark) / (white - dark)`, clamped at zero.
/// Elements whose denominator is below [`FLAT_FIELD_EPSILON`] become zero.
pub fn white_balance(raw: &Hypercube, white: &Hypercube, dark: &Hypercube) -> Result<Hypercube> {
    if !raw.same_shape(white) || !raw.same_shape(dark) {
        return Err(Error::ShapeMismatch(format!(
            "raw {:?}, white {:?}, dark {:?}",
            raw.shape(),
            white.shape(),
            dark.shape()
        )));
    }
    let data = raw
        .data()
        .iter()
        .zip(white.data())
        .zip(dark.data())
        .map(|((&r, &w), &d)| flat_field(r, w, d))
        .collect();
    Hypercube::new(raw.width(), raw.height(), raw.wavelengths().clone(), data)
}

#[inline]
pub(crate) fn flat_field(raw: f32, white: f32, dark: f32) -> f32 {
    let den = white - dark;
    if den < FLAT_FIELD_EPSILON {
        0.0
    } else {
        ((raw - dark) / den).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensor::{build_synthetic_sensor, IdealBandSpec, SyntheticSensorParams};

    fn grid(v: &[f64]) -> Wavelengths {
        Wavelengths::new(v.to_vec()).unwrap()
    }

    fn sensor(leakage: f64) -> SensorModel {
        build_synthetic_sensor(&SyntheticSensorParams {
            n: 2,
            range: (500.0, 560.0),
            fwhm: 15.0,
            leakage,
        })
        .unwrap()
    }

    #[test]
    fn flat_spectrum_is_preserved() {
        let s = sensor(0.2);
        let hr =
            Hypercube::filled(3, 2, Wavelengths::stepped(400.0, 700.0, 3.0).unwrap(), 0.5).unwrap();
        let mid = simulate_spectral(&hr, &s).unwrap();
        let ideal = simulate_ideal(&hr, &s).unwrap();
        assert!(mid.data().iter().all(|&v| v == 0.5));
        assert!(ideal.data().iter().all(|&v| v == 0.5));
        assert_eq!(mid.wavelengths().values(), &[500.0, 520.0, 540.0, 560.0]);
    }

    #[test]
    fn delta_response_picks_one_wavelength() {
        let w = grid(&[500.0, 510.0, 520.0, 530.0, 540.0]);
        let delta = |i: usize| {
            let mut r = vec![0.0; 5];
            r[i] = 1.0;
            ResponseCurve::new(w.clone(), r).unwrap()
        };
        let curves: Vec<ResponseCurve> = (0..4).map(|i| delta(i + 1)).collect();
        let s = SensorModel::new(
            MosaicPattern::row_major(2).unwrap(),
            grid(&[510.0, 520.0, 530.0, 540.0]),
            curves,
            vec![IdealBandSpec::new(520.0, 0.8, 10.0).unwrap()],
        )
        .unwrap();
        let hr = Hypercube::from_fn(2, 1, w.clone(), |x, _, b| (b * 10 + x) as f32 * 0.01).unwrap();
        let out = simulate_spectral(&hr, &s).unwrap();
        for x in 0..2 {
            let expected: Vec<f32> = (1..5).map(|b| hr.get(x, 0, b)).collect();
            assert_eq!(out.pixel(x, 0), expected.as_slice());
        }
    }

    #[test]
    fn hand_computed_trapezoid_quotient() {
        // non-uniform grid 500, 510, 530 -> trapezoid weights 5, 15, 10
        let w = grid(&[500.0, 510.0, 530.0]);
        let curve = ResponseCurve::new(w.clone(), vec![0.2, 1.0, 0.5]).unwrap();
        let projector = SpectralProjector::new(&w, &[curve]).unwrap();
        let mut out = [0f32];
        projector.project(&[0.3, 0.6, 0.9], &mut out);
        // (5*0.2*0.3 + 15*1.0*0.6 + 10*0.5*0.9) / (5*0.2 + 15*1.0 + 10*0.5) = 13.8 / 21
        assert!((out[0] as f64 - 13.8 / 21.0).abs() < 1e-7);
    }

    #[test]
    fn no_overlap_is_an_error() {
        let s = sensor(0.0);
        let hr = Hypercube::filled(1, 1, Wavelengths::stepped(700.0, 900.0, 10.0).unwrap(), 0.5)
            .unwrap();
        assert!(matches!(
            simulate_spectral(&hr, &s),
            Err(Error::NoOverlap { .. })
        ));
        assert!(matches!(
            simulate_ideal(&hr, &s),
            Err(Error::NoOverlap { .. })
        ));
    }

    #[test]
    fn empty_ideal_list_is_an_error() {
        let s = sensor(0.0);
        let empty = SensorModel::new(
            s.pattern().clone(),
            s.measured_centers().clone(),
            s.measured().to_vec(),
            vec![],
        )
        .unwrap();
        let hr =
            Hypercube::filled(1, 1, Wavelengths::stepped(450.0, 600.0, 5.0).unwrap(), 0.5).unwrap();
        assert!(matches!(
            simulate_ideal(&hr, &empty),
            Err(Error::EmptyIdealBands)
        ));
    }

    #[test]
    fn peaked_spectrum_beats_flat_one_of_equal_mean() {
        let s = build_synthetic_sensor(&SyntheticSensorParams {
            n: 2,
            range: (500.0, 560.0),
            fwhm: 15.0,
            leakage: 0.0,
        })
        .unwrap();
        let single = SensorModel::new(
            s.pattern().clone(),
            s.measured_centers().clone(),
            s.measured().to_vec(),
            vec![s.ideal()[1]],
        )
        .unwrap();
        let w = Wavelengths::stepped(500.0, 560.0, 1.0).unwrap();
        let shape: Vec<f32> = w
            .values()
            .iter()
            .map(|&l| super::super::lorentzian(l, &s.ideal()[1]) as f32)
            .collect();
        let mean = shape.iter().sum::<f32>() / shape.len() as f32;
        let peaked = Hypercube::new(1, 1, w.clone(), shape).unwrap();
        let flat = Hypercube::filled(1, 1, w, mean).unwrap();
        let p = simulate_ideal(&peaked, &single).unwrap().data()[0];
        let f = simulate_ideal(&flat, &single).unwrap().data()[0];
        assert!(p > f, "{p} vs {f}");
    }

    #[test]
    fn subsample_reads_pattern() {
        let pattern = MosaicPattern::new(2, vec![2, 0, 3, 1]).unwrap();
        let w = grid(&[500.0, 510.0, 520.0, 530.0]);
        let cube = Hypercube::from_fn(5, 3, w, |_, _, b| b as f32).unwrap();
        let m = subsample(&cube, &pattern).unwrap();
        assert_eq!(&m.data()[..5], &[2.0, 0.0, 2.0, 0.0, 2.0]);
        assert_eq!(&m.data()[5..10], &[3.0, 1.0, 3.0, 1.0, 3.0]);
        assert_eq!(&m.data()[10..], &[2.0, 0.0, 2.0, 0.0, 2.0]);
        assert!(subsample(
            &Hypercube::filled(2, 2, grid(&[500.0, 510.0]), 0.0).unwrap(),
            &pattern
        )
        .is_err());
    }

    #[test]
    fn white_balance_cases() {
        let w = grid(&[500.0, 510.0]);
        let c = |v: f32| Hypercube::filled(2, 1, w.clone(), v).unwrap();
        let wb = white_balance(&c(0.6), &c(0.9), &c(0.1)).unwrap();
        assert!(wb.data().iter().all(|&v| (v - 0.625).abs() < 1e-6));
        assert!(white_balance(&c(0.9), &c(0.9), &c(0.1))
            .unwrap()
            .data()
            .iter()
            .all(|&v| v == 1.0));
        assert!(white_balance(&c(0.1), &c(0.9), &c(0.1))
            .unwrap()
            .data()
            .iter()
            .all(|&v| v == 0.0));
        // below dark clamps, dead pixel (white == dark) gives zero
        assert!(white_balance(&c(0.05), &c(0.9), &c(0.1))
            .unwrap()
            .data()
            .iter()
            .all(|&v| v == 0.0));
        assert!(white_balance(&c(0.5), &c(0.1), &c(0.1))
            .unwrap()
            .data()
            .iter()
            .all(|&v| v == 0.0));
        let other = Hypercube::filled(1, 1, w.clone(), 0.5).unwrap();
        assert!(matches!(
            white_balance(&c(0.5), &other, &c(0.1)),
            Err(Error::ShapeMismatch(_))
        ));
    }
}

use nalgebra::DMatrix;

use super::SensorModel;
use crate::cube::Wavelengths;
use crate::error::{Error, Result};
use crate::spectrum::{resample_curve, ResponseCurve};

/// Ratio of smallest to largest singular value below which the measured
/// responses are treated as linearly dependent.
const RANK_TOLERANCE: f64 = 1e-10;

/// Row-major `rows x cols` linear map from measured to ideal bands.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl CalibrationMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter {
                field: "calibration",
                reason: format!("empty {rows}x{cols} matrix"),
            });
        }
        if entries.len() != rows * cols {
            return Err(Error::SizeMismatch {
                field: "calibration",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(index) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                field: "calibration",
                index,
            });
        }
        Ok(CalibrationMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        CalibrationMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Checks that this matrix maps the sensor's measured bands to its ideal
    /// bands.
    pub fn check_sensor(&self, sensor: &SensorModel) -> Result<()> {
        if self.rows != sensor.ideal_bands() || self.cols != sensor.measured_bands() {
            return Err(Error::ShapeMismatch(format!(
                "calibration is {}x{}, sensor has {} ideal and {} measured bands",
                self.rows,
                self.cols,
                sensor.ideal_bands(),
                sensor.measured_bands()
            )));
        }
        Ok(())
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r != c {
                    acc += self.get(r, c).powi(2);
                }
            }
        }
        acc.sqrt()
    }

    /// Largest absolute deviation from the identity.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((self.get(r, c) - target).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationFit {
    pub matrix: CalibrationMatrix,
    /// RMS of `ideal - C · measured` over all fitted samples.
    pub residual_rms: f64,
}

/// Area-normalised samples of `curves` on `grid`, one column per curve.
fn normalized_columns(curves: &[ResponseCurve], grid: &Wavelengths) -> DMatrix<f64> {
    let weights = grid.trapezoid_weights();
    let mut m = DMatrix::zeros(grid.len(), curves.len());
    for (k, curve) in curves.iter().enumerate() {
        let samples = resample_curve(curve, grid);
        let area: f64 = samples.iter().zip(&weights).map(|(s, w)| s * w).sum();
        let scale = if area > 0.0 { 1.0 / area } else { 0.0 };
        for (i, s) in samples.iter().enumerate() {
            m[(i, k)] = s * scale;
        }
    }
    m
}

/// Least-squares map from measured to ideal band responses on `grid`.
///
/// Both sets of responses are normalised to unit area first, matching the
/// normalisation of the simulated cubes: with `m_k` and `i_j` the normalised
/// curves, `C` minimises `Σ_λ ‖i(λ) - C m(λ)‖²`.
pub fn fit_calibration(sensor: &SensorModel, grid: &Wavelengths) -> Result<CalibrationFit> {
    if sensor.ideal_bands() == 0 {
        return Err(Error::EmptyIdealBands);
    }
    let measured = normalized_columns(sensor.measured(), grid);
    let ideal = normalized_columns(&sensor.ideal_curves()?, grid);
    if grid.len() < sensor.measured_bands() {
        return Err(Error::DegenerateResponses {
            condition: f64::INFINITY,
        });
    }

    let svd = measured.clone().svd(true, true);
    let max = svd.singular_values.max();
    let min = svd.singular_values.min();
    if !(max > 0.0) || min / max < RANK_TOLERANCE {
        return Err(Error::DegenerateResponses {
            condition: if min > 0.0 { max / min } else { f64::INFINITY },
        });
    }
    // measured · Cᵀ ≈ ideal
    let ct = svd
        .solve(&ideal, 0.0)
        .map_err(|_| Error::DegenerateResponses {
            condition: max / min,
        })?;
    let residual = &ideal - &measured * &ct;
    let residual_rms = (residual.norm_squared() / residual.len() as f64).sqrt();

    // column-major Cᵀ is row-major C
    Ok(CalibrationFit {
        matrix: CalibrationMatrix::new(ct.ncols(), ct.nrows(), ct.as_slice().to_vec())?,
        residual_rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mosaic::MosaicPattern;
    use crate::sensor::{build_synthetic_sensor, lorentzian, IdealBandSpec, SyntheticSensorParams};

    fn synthetic(leakage: f64) -> SensorModel {
        build_synthetic_sensor(&SyntheticSensorParams {
            leakage,
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn zero_leakage_fits_identity() {
        let s = synthetic(0.0);
        let fit = fit_calibration(&s, s.grid()).unwrap();
        assert!(fit.matrix.max_deviation_from_identity() < 1e-10);
        assert!(fit.residual_rms < 1e-12);
    }

    #[test]
    fn recovers_inverse_of_known_mixing() {
        // measured_k = Σ_j P_kj ideal_j with row-stochastic P
        let n = 2;
        let grid = Wavelengths::stepped(480.0, 600.0, 0.5).unwrap();
        let centers = [500.0, 525.0, 550.0, 575.0];
        let ideal: Vec<IdealBandSpec> = centers
            .iter()
            .map(|&c| IdealBandSpec::new(c, 0.9, 12.0).unwrap())
            .collect();
        let p = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.70, 0.20, 0.05, 0.05, //
                0.10, 0.75, 0.10, 0.05, //
                0.05, 0.15, 0.70, 0.10, //
                0.00, 0.10, 0.20, 0.70,
            ],
        );
        let measured: Vec<ResponseCurve> = (0..4)
            .map(|k| {
                ResponseCurve::from_fn(grid.clone(), |l| {
                    (0..4).map(|j| p[(k, j)] * lorentzian(l, &ideal[j])).sum()
                })
                .unwrap()
            })
            .collect();
        let sensor = SensorModel::new(
            MosaicPattern::row_major(n).unwrap(),
            Wavelengths::new(centers.to_vec()).unwrap(),
            measured,
            ideal.clone(),
        )
        .unwrap();
        let fit = fit_calibration(&sensor, &grid).unwrap();

        // Under area normalisation the mixing seen by the fit is
        // Q_kj = P_kj A_j / Σ_j P_kj A_j with A_j the ideal areas.
        let w = grid.trapezoid_weights();
        let areas: Vec<f64> = ideal
            .iter()
            .map(|s| {
                grid.values()
                    .iter()
                    .zip(&w)
                    .map(|(&l, w)| w * lorentzian(l, s))
                    .sum()
            })
            .collect();
        let mut q = p.clone();
        for k in 0..4 {
            let row: f64 = (0..4).map(|j| p[(k, j)] * areas[j]).sum();
            for j in 0..4 {
                q[(k, j)] = p[(k, j)] * areas[j] / row;
            }
        }
        let expected = q.try_inverse().unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert!((fit.matrix.get(r, c) - expected[(r, c)]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn duplicate_curves_are_degenerate() {
        let s = synthetic(0.1);
        let mut measured = s.measured().to_vec();
        measured[5] = measured[4].clone();
        let dup = SensorModel::new(
            s.pattern().clone(),
            s.measured_centers().clone(),
            measured,
            s.ideal().to_vec(),
        )
        .unwrap();
        assert!(matches!(
            fit_calibration(&dup, dup.grid()),
            Err(Error::DegenerateResponses { .. })
        ));
    }

    #[test]
    fn leakage_increases_off_diagonal_mass_and_residual() {
        let leakages = [0.0, 0.05, 0.1, 0.2, 0.3, 0.45];
        let fits: Vec<CalibrationFit> = leakages
            .iter()
            .map(|&l| {
                let s = synthetic(l);
                fit_calibration(&s, s.grid()).unwrap()
            })
            .collect();
        for pair in fits.windows(2) {
            assert!(pair[1].matrix.off_diagonal_norm() > pair[0].matrix.off_diagonal_norm());
            assert!(pair[1].residual_rms >= pair[0].residual_rms);
        }
    }

    #[test]
    fn shape_check_against_sensor() {
        let s = synthetic(0.0);
        assert!(CalibrationMatrix::identity(16).check_sensor(&s).is_ok());
        assert!(CalibrationMatrix::identity(4).check_sensor(&s).is_err());
    }
}

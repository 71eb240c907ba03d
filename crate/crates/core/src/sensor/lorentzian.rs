use crate::error::{Error, Result};

/// Parameters of an idealised band-pass response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealBandSpec {
    /// Centre wavelength in nm.
    pub lambda0: f64,
    /// Peak quantum efficiency, in (0, 1].
    pub qe: f64,
    /// Full width at half maximum in nm.
    pub fwhm: f64,
}

impl IdealBandSpec {
    pub fn new(lambda0: f64, qe: f64, fwhm: f64) -> Result<Self> {
        if !(lambda0.is_finite() && lambda0 > 0.0) {
            return Err(Error::InvalidParameter {
                field: "lambda0",
                reason: format!("{lambda0} is not a positive wavelength"),
            });
        }
        if !(qe > 0.0 && qe <= 1.0) {
            return Err(Error::InvalidParameter {
                field: "qe",
                reason: format!("{qe} outside (0, 1]"),
            });
        }
        if !(fwhm > 0.0 && fwhm < lambda0) {
            return Err(Error::InvalidParameter {
                field: "fwhm",
                reason: format!("{fwhm} must be positive and below lambda0 = {lambda0}"),
            });
        }
        Ok(IdealBandSpec { lambda0, qe, fwhm })
    }

    /// Shape factor α of the response.
    ///
    /// Written as `(fwhm / (sqrt(λ0² + fwhm²) + λ0))²`, which equals
    /// `(sqrt(λ0² + fwhm²) - λ0)² / fwhm²` without the cancellation for
    /// narrow bands.
    pub fn alpha(&self) -> f64 {
        let s = self.fwhm / (self.lambda0.hypot(self.fwhm) + self.lambda0);
        s * s
    }
}

/// Lorentzian (in optical frequency) band-pass response at `lambda` nm:
/// `qe · αλ² / ((λ - λ0)² + αλ²)`.
///
/// Peaks at exactly `qe` for `lambda == lambda0`, and the two half-maximum
/// wavelengths are exactly `fwhm` apart.
pub fn lorentzian(lambda: f64, spec: &IdealBandSpec) -> f64 {
    let a = spec.alpha() * lambda * lambda;
    let d = lambda - spec.lambda0;
    spec.qe * a / (d * d + a)
}

//! Spectral cubes to sRGB images and oxygen-saturation maps.

mod oximetry;
mod tables;

pub use oximetry::{oxygenation_map, ExtinctionTable, OxyMap, ABSORBANCE_FLOOR};
pub use tables::{cie1931_observer, d65_illuminant, hemoglobin_extinction, SpectralTable};

use rayon::prelude::*;

use crate::cube::{Hypercube, Wavelengths};
use crate::error::{Error, Result};
use crate::simd::avx2_dispatch;

/// Linear sRGB to XYZ, from the sRGB primaries and D65 white.
pub const SRGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

/// XYZ to linear sRGB; the exact inverse of [`SRGB_TO_XYZ`].
pub fn xyz_to_linear_srgb_matrix() -> [[f64; 3]; 3] {
    let m = nalgebra::Matrix3::from_fn(|r, c| SRGB_TO_XYZ[r][c])
        .try_inverse()
        .expect("sRGB primaries are independent");
    [0, 1, 2].map(|r| [0, 1, 2].map(|c| m[(r, c)]))
}

/// sRGB transfer function (linear to encoded), unclamped.
pub fn srgb_gamma(linear: f64) -> f64 {
    if linear <= 0.0031308 {
        12.92 * linear
    } else {
        1.055 * linear.powf(1.0 / 2.4) - 0.055
    }
}

/// Inverse of [`srgb_gamma`].
pub fn srgb_inverse_gamma(encoded: f64) -> f64 {
    if encoded <= 0.04045 {
        encoded / 12.92
    } else {
        ((encoded + 0.055) / 1.055).powf(2.4)
    }
}

/// Gamma-encoded sRGB image, channels interleaved, values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

impl RgbImage {
    /// Values are clamped to `[0, 1]`; non-finite values are rejected.
    pub fn new(width: usize, height: usize, mut data: Vec<f32>) -> Result<Self> {
        if data.len() != 3 * width * height {
            return Err(Error::SizeMismatch {
                field: "rgb",
                expected: 3 * width * height,
                found: data.len(),
            });
        }
        for (index, v) in data.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    field: "rgb",
                    index,
                });
            }
            *v = v.clamp(0.0, 1.0);
        }
        Ok(RgbImage {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn pixel(&self, x: usize, y: usize) -> [f32; 3] {
        let i = 3 * (y * self.width + x);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    /// The image as a three-band cube for metrics and the exchange format.
    /// Bands stay in R, G, B order; the 450/550/650 nm labels are only
    /// placeholders, since cube wavelengths must increase.
    pub fn to_cube(&self) -> Result<Hypercube> {
        Hypercube::new(
            self.width,
            self.height,
            Wavelengths::new(vec![450.0, 550.0, 650.0])?,
            self.data.clone(),
        )
    }

    /// 8-bit samples, `round(255 v)`.
    pub fn to_u8(&self) -> Vec<u8> {
        self.data
            .iter()
            .map(|&v| (255.0 * v).round() as u8)
            .collect()
    }
}

/// Per-band weights projecting a reflectance spectrum to XYZ under an
/// illuminant.
///
/// Each channel is normalised so that unit reflectance over the cube's bands
/// reproduces the illuminant's white point, with `Y = 1`. This keeps a white
/// target white even when the bands cover only part of the visible range.
#[derive(Debug, Clone)]
pub struct XyzProjector {
    // per channel: weight of each band
    weights: [Vec<f64>; 3],
    norms: [f64; 3],
    white: [f64; 3],
}

impl XyzProjector {
    pub fn new(wavelengths: &Wavelengths, illuminant: &SpectralTable) -> Result<Self> {
        let cmf = cie1931_observer();
        let trapezoid = wavelengths.trapezoid_weights();
        let mut weights = [Vec::new(), Vec::new(), Vec::new()];
        for (i, &lambda) in wavelengths.values().iter().enumerate() {
            let (Some(s), true) = (illuminant.value_at(0, lambda), cmf.contains(lambda)) else {
                return Err(Error::InvalidParameter {
                    field: "wavelengths",
                    reason: format!(
                        "{lambda} nm outside the colour tables ({}..{} nm)",
                        cmf.range().0.max(illuminant.range().0),
                        cmf.range().1.min(illuminant.range().1)
                    ),
                });
            };
            for (ch, w) in weights.iter_mut().enumerate() {
                w.push(trapezoid[i] * cmf.value_at(ch, lambda).unwrap() * s);
            }
        }
        let norms = [0, 1, 2].map(|ch| weights[ch].iter().sum::<f64>());
        if norms.iter().any(|&n| !(n > 0.0)) {
            return Err(Error::InvalidParameter {
                field: "wavelengths",
                reason: "bands carry no weight in one of X, Y, Z".into(),
            });
        }
        Ok(XyzProjector {
            weights,
            norms,
            white: illuminant_white(illuminant, &cmf),
        })
    }

    pub fn white(&self) -> [f64; 3] {
        self.white
    }

    pub fn project(&self, spectrum: &[f32]) -> [f64; 3] {
        [0, 1, 2].map(|ch| {
            let acc: f64 = self.weights[ch]
                .iter()
                .zip(spectrum)
                .map(|(w, &v)| w * v as f64)
                .sum();
            self.white[ch] * (acc / self.norms[ch])
        })
    }

    /// Combined band weights for one channel, already normalised.
    fn normalized(&self, ch: usize) -> impl Iterator<Item = f64> + '_ {
        self.weights[ch]
            .iter()
            .map(move |w| self.white[ch] * w / self.norms[ch])
    }
}

/// XYZ of unit reflectance under `illuminant`, integrated over the whole table
/// and scaled to `Y = 1`.
fn illuminant_white(illuminant: &SpectralTable, cmf: &SpectralTable) -> [f64; 3] {
    let mut sums = [0.0; 3];
    for (i, &lambda) in illuminant.wavelengths().iter().enumerate() {
        if !cmf.contains(lambda) {
            continue;
        }
        let s = illuminant.column(0)[i];
        for (ch, acc) in sums.iter_mut().enumerate() {
            *acc += cmf.value_at(ch, lambda).unwrap() * s;
        }
    }
    [sums[0] / sums[1], 1.0, sums[2] / sums[1]]
}

/// Per-pixel XYZ of a reflectance cube under `illuminant`.
pub fn cube_to_xyz(cube: &Hypercube, illuminant: &SpectralTable) -> Result<Vec<[f64; 3]>> {
    let projector = XyzProjector::new(cube.wavelengths(), illuminant)?;
    Ok(cube
        .data()
        .chunks_exact(cube.bands())
        .map(|px| projector.project(px))
        .collect())
}

/// Encodes one XYZ triple as gamma-corrected sRGB, clamped to `[0, 1]`.
pub fn xyz_to_srgb_pixel(xyz: [f64; 3], m: &[[f64; 3]; 3]) -> [f64; 3] {
    [0, 1, 2].map(|r| {
        let linear = m[r][0] * xyz[0] + m[r][1] * xyz[1] + m[r][2] * xyz[2];
        srgb_gamma(linear).clamp(0.0, 1.0)
    })
}

pub fn xyz_to_srgb(xyz: &[[f64; 3]], width: usize, height: usize) -> Result<RgbImage> {
    let m = xyz_to_linear_srgb_matrix();
    let data = xyz
        .iter()
        .flat_map(|&p| xyz_to_srgb_pixel(p, &m))
        .map(|v| v as f32)
        .collect();
    RgbImage::new(width, height, data)
}

/// Encoded sRGB back to XYZ (inverse gamma, then the primaries matrix).
pub fn srgb_to_xyz(rgb: [f64; 3]) -> [f64; 3] {
    let lin = rgb.map(srgb_inverse_gamma);
    [0, 1, 2].map(|r| (0..3).map(|c| SRGB_TO_XYZ[r][c] * lin[c]).sum())
}

/// sRGB rendering of a cube under D65.
pub fn cube_to_srgb(cube: &Hypercube) -> Result<RgbImage> {
    let xyz = cube_to_xyz(cube, &d65_illuminant())?;
    xyz_to_srgb(&xyz, cube.width(), cube.height())
}

/// Table-driven sRGB transfer function for the frame-rate path.
///
/// Linear interpolation in a 4097-entry table; the error against
/// [`srgb_gamma`] stays below 1e-4 on `[0, 1]`, well under 8-bit resolution.
#[derive(Debug, Clone)]
pub struct GammaLut {
    // one padding entry so that linear = 1 can index one past the end
    table: Box<[f32; GammaLut::STEPS + 2]>,
}

impl GammaLut {
    const STEPS: usize = 4096;

    pub fn new() -> Self {
        let mut table = Box::new([0f32; Self::STEPS + 2]);
        for (i, v) in table.iter_mut().enumerate() {
            *v = srgb_gamma(i.min(Self::STEPS) as f64 / Self::STEPS as f64) as f32;
        }
        GammaLut { table }
    }

    /// Encoded value of `linear`, clamped to `[0, 1]`.
    #[inline(always)]
    #[allow(clippy::manual_clamp)]
    pub fn encode(&self, linear: f32) -> f32 {
        // f32::max maps NaN to 0
        let pos = linear.max(0.0).min(1.0) * Self::STEPS as f32;
        let i = (pos as i32 as usize).min(Self::STEPS);
        let t = pos - i as f32;
        let (a, b) = (self.table[i], self.table[i + 1]);
        a + t * (b - a)
    }

    /// Encodes every value in place; same results as [`Self::encode`].
    pub fn encode_slice(&self, values: &mut [f32]) {
        #[cfg(target_arch = "x86_64")]
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the feature was detected at run time.
            unsafe { self.encode_slice_avx2(values) };
            return;
        }
        for v in values.iter_mut() {
            *v = self.encode(*v);
        }
    }

    // `encode` on eight lanes, with the two table reads as gathers
    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx2")]
    unsafe fn encode_slice_avx2(&self, values: &mut [f32]) {
        use std::arch::x86_64::*;

        let zero = _mm256_setzero_ps();
        let one = _mm256_set1_ps(1.0);
        let steps = _mm256_set1_ps(Self::STEPS as f32);
        let last = _mm256_set1_epi32(Self::STEPS as i32);
        let table = self.table.as_ptr();
        let mut chunks = values.chunks_exact_mut(8);
        for chunk in &mut chunks {
            // SAFETY: `chunk` holds 8 values; indices are clamped to
            // 0..=STEPS and the table has STEPS + 2 entries.
            unsafe {
                let x = _mm256_loadu_ps(chunk.as_ptr());
                // max_ps returns the second operand for NaN, like f32::max
                let pos = _mm256_mul_ps(_mm256_min_ps(_mm256_max_ps(x, zero), one), steps);
                let i = _mm256_min_epi32(_mm256_cvttps_epi32(pos), last);
                let t = _mm256_sub_ps(pos, _mm256_cvtepi32_ps(i));
                let a = _mm256_i32gather_ps::<4>(table, i);
                let b = _mm256_i32gather_ps::<4>(table.add(1), i);
                _mm256_storeu_ps(
                    chunk.as_mut_ptr(),
                    _mm256_add_ps(a, _mm256_mul_ps(t, _mm256_sub_ps(b, a))),
                );
            }
        }
        for v in chunks.into_remainder() {
            *v = self.encode(*v);
        }
    }
}

impl Default for GammaLut {
    fn default() -> Self {
        Self::new()
    }
}

/// Spectra straight to encoded sRGB: one 3 x bands matrix (XYZ projection
/// and primaries combined) followed by the gamma table.
#[derive(Debug, Clone)]
pub struct SrgbRenderer {
    bands: usize,
    // per band: contribution to linear R, G, B and a zero pad lane
    weights: Vec<[f32; 4]>,
    lut: GammaLut,
}

impl SrgbRenderer {
    pub fn new(wavelengths: &Wavelengths, illuminant: &SpectralTable) -> Result<Self> {
        let projector = XyzProjector::new(wavelengths, illuminant)?;
        let m = xyz_to_linear_srgb_matrix();
        let per_channel: Vec<Vec<f64>> = (0..3)
            .map(|ch| projector.normalized(ch).collect())
            .collect();
        let bands = wavelengths.len();
        let weights = (0..bands)
            .map(|b| {
                let mut w = [0f32; 4];
                for (r, row) in m.iter().enumerate() {
                    w[r] = (0..3).map(|ch| row[ch] * per_channel[ch][b]).sum::<f64>() as f32;
                }
                w
            })
            .collect();
        Ok(SrgbRenderer {
            bands,
            weights,
            lut: GammaLut::new(),
        })
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    avx2_dispatch! {
        SrgbRenderer:
        /// Renders whole pixels of `spectra` into interleaved RGB `out`.
        pub fn render => render_inner(&self, spectra: &[f32], out: &mut [f32])
    }

    avx2_dispatch! {
        SrgbRenderer:
        /// Renders `len` pixels stored as one plane per band into
        /// interleaved RGB `out`.
        pub fn render_planes => render_planes_inner(&self, planes: &[f32], len: usize, out: &mut [f32])
    }

    #[inline(always)]
    fn render_planes_inner(&self, planes: &[f32], len: usize, out: &mut [f32]) {
        const BLOCK: usize = 64;
        for start in (0..len).step_by(BLOCK) {
            let end = (start + BLOCK).min(len);
            let mut linear = [[0f32; BLOCK]; 3];
            for (plane, w) in planes.chunks_exact(len).zip(&self.weights) {
                for (ch, acc) in linear.iter_mut().enumerate() {
                    for (a, &v) in acc.iter_mut().zip(&plane[start..end]) {
                        *a += w[ch] * v;
                    }
                }
            }
            let dst = &mut out[3 * start..3 * end];
            for (i, rgb) in dst.chunks_exact_mut(3).enumerate() {
                for (ch, v) in rgb.iter_mut().enumerate() {
                    *v = linear[ch][i];
                }
            }
            self.lut.encode_slice(dst);
        }
    }

    #[inline(always)]
    fn render_inner(&self, spectra: &[f32], out: &mut [f32]) {
        const BLOCK: usize = 64;
        for (src, dst) in spectra
            .chunks(BLOCK * self.bands)
            .zip(out.chunks_mut(3 * BLOCK))
        {
            for (px, rgb) in src.chunks_exact(self.bands).zip(dst.chunks_exact_mut(3)) {
                let mut acc = [0f32; 4];
                for (w, &v) in self.weights.iter().zip(px) {
                    for (a, &c) in acc.iter_mut().zip(w) {
                        *a += c * v;
                    }
                }
                rgb.copy_from_slice(&acc[..3]);
            }
            self.lut.encode_slice(dst);
        }
    }

    pub fn render_cube(&self, cube: &Hypercube) -> Result<RgbImage> {
        if cube.bands() != self.bands {
            return Err(Error::DimensionMismatch {
                expected: self.bands,
                found: cube.bands(),
            });
        }
        let mut data = vec![0f32; 3 * cube.width() * cube.height()];
        data.par_chunks_mut(3 * 4096)
            .zip(cube.data().par_chunks(self.bands * 4096))
            .for_each(|(out, src)| self.render(src, out));
        RgbImage::new(cube.width(), cube.height(), data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn visible16() -> Wavelengths {
        Wavelengths::stepped(470.0, 620.0, 10.0).unwrap()
    }

    #[test]
    fn unit_reflectance_has_unit_luminance() {
        let cube = Hypercube::filled(2, 2, visible16(), 1.0).unwrap();
        let xyz = cube_to_xyz(&cube, &d65_illuminant()).unwrap();
        assert!(xyz.iter().all(|p| p[1] == 1.0));
    }

    #[test]
    fn zero_reflectance_is_black() {
        let cube = Hypercube::filled(2, 1, visible16(), 0.0).unwrap();
        let xyz = cube_to_xyz(&cube, &d65_illuminant()).unwrap();
        assert!(xyz.iter().all(|p| *p == [0.0, 0.0, 0.0]));
        let rgb = xyz_to_srgb(&xyz, 2, 1).unwrap();
        assert!(rgb.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_band_sums_by_hand() {
        // reflectance 1 only in the 550 nm band of a 10 nm grid: the raw sums
        // reduce to w · cmf(550) · D65(550) with trapezoid weight w = 10
        let cube = Hypercube::from_fn(1, 1, visible16(), |_, _, b| if b == 8 { 1.0 } else { 0.0 })
            .unwrap();
        let d65 = d65_illuminant();
        let projector = XyzProjector::new(cube.wavelengths(), &d65).unwrap();
        let xyz = projector.project(cube.pixel(0, 0));
        let cmf = cie1931_observer();
        let s = d65.value_at(0, 550.0).unwrap();
        for (ch, v) in xyz.iter().enumerate() {
            let raw = v / projector.white[ch] * projector.norms[ch];
            let hand = 10.0 * cmf.value_at(ch, 550.0).unwrap() * s;
            assert!(
                (raw - hand).abs() < 1e-9 * hand,
                "channel {ch}: {raw} vs {hand}"
            );
        }
    }

    #[test]
    fn wavelengths_outside_tables_rejected() {
        let cube =
            Hypercube::filled(1, 1, Wavelengths::new(vec![700.0, 800.0]).unwrap(), 1.0).unwrap();
        assert!(cube_to_xyz(&cube, &d65_illuminant()).is_err());
    }

    #[test]
    fn d65_white_encodes_to_white() {
        let rgb = xyz_to_srgb(&[[0.9505, 1.0, 1.0890]], 1, 1).unwrap();
        assert!(rgb.data().iter().all(|&v| (v - 1.0).abs() < 1e-3));
    }

    #[test]
    fn gamma_spot_value() {
        assert!((srgb_gamma(0.5) - 0.7354).abs() < 1e-4);
        // knee is continuous
        assert!((srgb_gamma(0.0031308) - 12.92 * 0.0031308).abs() < 1e-6);
    }

    #[test]
    fn unit_reflectance_renders_white_for_any_band_count() {
        for bands in [2, 3, 5, 16, 31] {
            let w = Wavelengths::linspace(470.0, 620.0, bands).unwrap();
            let rgb = cube_to_srgb(&Hypercube::filled(1, 1, w, 1.0).unwrap()).unwrap();
            assert!(
                rgb.data().iter().all(|&v| (v - 1.0).abs() < 1e-3),
                "{bands}: {:?}",
                rgb.data()
            );
        }
    }

    #[test]
    fn gamma_lut_tracks_exact_curve() {
        let lut = GammaLut::new();
        let worst = (0..=100_000)
            .map(|i| i as f64 / 100_000.0)
            .map(|x| (lut.encode(x as f32) as f64 - srgb_gamma(x)).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-4, "{worst}");
        assert_eq!(lut.encode(-0.2), 0.0);
        assert_eq!(lut.encode(1.7), 1.0);
        assert_eq!(lut.encode(f32::NAN), 0.0);
    }

    #[test]
    fn gamma_lut_slice_matches_scalar() {
        let lut = GammaLut::new();
        let mut values: Vec<f32> = (0..10_003).map(|i| i as f32 / 9_000.0 - 0.05).collect();
        values.extend([f32::NAN, -0.0, 1.0, f32::INFINITY, f32::NEG_INFINITY, 0.5]);
        let scalar: Vec<f32> = values.iter().map(|&v| lut.encode(v)).collect();
        lut.encode_slice(&mut values);
        assert_eq!(values, scalar);
    }

    #[test]
    fn renderer_agrees_with_exact_path() {
        let w = visible16();
        let cube = Hypercube::from_fn(7, 5, w.clone(), |x, y, b| {
            ((x * 7 + y * 3 + b * 5) % 11) as f32 / 11.0
        })
        .unwrap();
        let exact = cube_to_srgb(&cube).unwrap();
        let fast = SrgbRenderer::new(&w, &d65_illuminant())
            .unwrap()
            .render_cube(&cube)
            .unwrap();
        for (a, b) in exact.data().iter().zip(fast.data()) {
            assert!((a - b).abs() < 1e-3);
        }
    }

    #[test]
    fn planar_render_matches_interleaved() {
        let w = visible16();
        let cube = Hypercube::from_fn(70, 1, w.clone(), |x, _, b| {
            ((x * 7 + b * 5) % 11) as f32 / 11.0
        })
        .unwrap();
        let renderer = SrgbRenderer::new(&w, &d65_illuminant()).unwrap();
        let mut planes = vec![0.0; 70 * 16];
        for x in 0..70 {
            for b in 0..16 {
                planes[b * 70 + x] = cube.get(x, 0, b);
            }
        }
        let mut a = vec![0.0; 3 * 70];
        let mut b = vec![0.0; 3 * 70];
        renderer.render(cube.data(), &mut a);
        renderer.render_planes(&planes, 70, &mut b);
        assert_eq!(a, b);
    }

    #[test]
    fn linear_in_reflectance() {
        let w = visible16();
        let cube = Hypercube::from_fn(3, 2, w, |x, y, b| 0.1 + 0.02 * (x + y + b) as f32).unwrap();
        let scaled = cube.map(|v| 0.5 * v).unwrap();
        let d65 = d65_illuminant();
        let a = cube_to_xyz(&cube, &d65).unwrap();
        let b = cube_to_xyz(&scaled, &d65).unwrap();
        for (p, q) in a.iter().zip(&b) {
            for ch in 0..3 {
                assert!((0.5 * p[ch] - q[ch]).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn srgb_round_trip(r in 0.0f64..1.0, g in 0.0f64..1.0, b in 0.0f64..1.0) {
            let xyz = srgb_to_xyz([r, g, b]);
            let back = xyz_to_srgb_pixel(xyz, &xyz_to_linear_srgb_matrix());
            for (x, y) in back.iter().zip([r, g, b]) {
                prop_assert!((x - y).abs() < 1e-6);
            }
        }
    }
}

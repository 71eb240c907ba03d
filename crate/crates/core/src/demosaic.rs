//! Bilinear demosaicking of mosaic frames and spectral correction.
//!
//! Every band is interpolated on its own stride-`n` lattice, at its true tile
//! offset. Outside the hull of a band's samples the nearest sample is
//! repeated.

use rayon::prelude::*;

use crate::cube::{Hypercube, Wavelengths};
use crate::error::{Error, Result};
use crate::mosaic::{MosaicImage, MosaicPattern};
use crate::sensor::{CalibrationMatrix, SensorModel};
use crate::simd::avx2_dispatch;

/// Samples of one band: `(x, y, value)` in raster order.
#[derive(Debug, Clone, PartialEq)]
pub struct BandSamples {
    pub band: usize,
    pub samples: Vec<(usize, usize, f32)>,
}

/// Groups mosaic pixels by the band their filter passes.
pub fn split_bands(mosaic: &MosaicImage) -> Vec<BandSamples> {
    let pattern = mosaic.pattern();
    let mut bands: Vec<BandSamples> = (0..pattern.bands())
        .map(|band| BandSamples {
            band,
            samples: Vec::new(),
        })
        .collect();
    for y in 0..mosaic.height() {
        for x in 0..mosaic.width() {
            bands[pattern.band_at_pixel(x, y)]
                .samples
                .push((x, y, mosaic.get(x, y)));
        }
    }
    bands
}

/// Interpolation coordinates along one axis for one lattice offset.
#[derive(Debug, Clone)]
struct AxisTable {
    // indices into the band's compacted lattice
    lo: Vec<u32>,
    hi: Vec<u32>,
    t: Vec<f32>,
}

impl AxisTable {
    fn new(len: usize, n: usize, offset: usize) -> Self {
        let count = (len - offset).div_ceil(n);
        let last = offset + n * (count - 1);
        let mut table = AxisTable {
            lo: Vec::with_capacity(len),
            hi: Vec::with_capacity(len),
            t: Vec::with_capacity(len),
        };
        for x in 0..len {
            let (lo, hi, t) = if x <= offset {
                (0, 0, 0.0)
            } else if x >= last {
                (count - 1, count - 1, 0.0)
            } else {
                let rel = x - offset;
                let i = rel / n;
                let t = (rel % n) as f32 / n as f32;
                if t == 0.0 {
                    (i, i, 0.0)
                } else {
                    (i, i + 1, t)
                }
            };
            table.lo.push(lo as u32);
            table.hi.push(hi as u32);
            table.t.push(t);
        }
        table
    }
}

/// Precomputed bilinear demosaicker for one frame geometry and layout.
#[derive(Debug, Clone)]
pub struct BilinearDemosaicker {
    width: usize,
    height: usize,
    pattern: MosaicPattern,
    // indexed by tile row offset
    y_tables: Vec<AxisTable>,
    // lattice columns per tile column offset
    x_counts: Vec<usize>,
    // k / n for k in 0..n
    fractions: Vec<f32>,
}

impl BilinearDemosaicker {
    pub fn new(width: usize, height: usize, pattern: &MosaicPattern) -> Result<Self> {
        let n = pattern.n();
        if width < n || height < n {
            return Err(Error::ImageTooSmall {
                width,
                height,
                min_width: n,
                min_height: n,
            });
        }
        Ok(BilinearDemosaicker {
            width,
            height,
            pattern: pattern.clone(),
            y_tables: (0..n).map(|o| AxisTable::new(height, n, o)).collect(),
            x_counts: (0..n).map(|o| (width - o).div_ceil(n)).collect(),
            fractions: (0..n).map(|k| k as f32 / n as f32).collect(),
        })
    }

    pub fn bands(&self) -> usize {
        self.pattern.bands()
    }

    /// Length of the scratch buffer [`Self::demosaic_rows`] needs.
    pub fn scratch_len(&self) -> usize {
        self.lanes_len() + self.bands() * self.width
    }

    /// Length of the scratch buffer [`Self::demosaic_planes`] needs.
    pub fn lanes_len(&self) -> usize {
        self.bands() * self.x_counts[0]
    }

    avx2_dispatch! {
        BilinearDemosaicker:
        /// Reconstructs output rows `first_row..` into `out`, which holds
        /// whole band-interleaved rows. `mosaic` is the full row-major frame.
        pub fn demosaic_rows => demosaic_rows_inner(
            &self, mosaic: &[f32], first_row: usize, out: &mut [f32], scratch: &mut [f32]
        )
    }

    avx2_dispatch! {
        BilinearDemosaicker:
        /// Reconstructs row `y` as one plane of `width` values per band.
        pub fn demosaic_planes => demosaic_planes_inner(
            &self, mosaic: &[f32], y: usize, planes: &mut [f32], lanes: &mut [f32]
        )
    }

    #[inline(always)]
    fn demosaic_rows_inner(
        &self,
        mosaic: &[f32],
        first_row: usize,
        out: &mut [f32],
        scratch: &mut [f32],
    ) {
        let (bands, w) = (self.bands(), self.width);
        let (lanes, planes) = scratch[..self.scratch_len()].split_at_mut(self.lanes_len());
        for (r, out_row) in out.chunks_exact_mut(w * bands).enumerate() {
            self.demosaic_planes_inner(mosaic, first_row + r, planes, lanes);
            for (x, px) in out_row.chunks_exact_mut(bands).enumerate() {
                for (b, v) in px.iter_mut().enumerate() {
                    *v = planes[b * w + x];
                }
            }
        }
    }

    #[inline(always)]
    fn demosaic_planes_inner(
        &self,
        mosaic: &[f32],
        y: usize,
        planes: &mut [f32],
        lanes: &mut [f32],
    ) {
        let n = self.pattern.n();
        let w = self.width;
        let stride = self.x_counts[0];
        debug_assert_eq!(mosaic.len(), w * self.height);

        // vertical pass: each band's lattice row at this y
        for (b, lane) in lanes
            .chunks_exact_mut(stride)
            .enumerate()
            .take(self.bands())
        {
            let (oy, ox) = self.pattern.position_of(b);
            let yt = &self.y_tables[oy];
            let row0 = &mosaic[(oy + n * yt.lo[y] as usize) * w..][..w];
            let row1 = &mosaic[(oy + n * yt.hi[y] as usize) * w..][..w];
            let ty = yt.t[y];
            let samples = row0[ox..]
                .iter()
                .step_by(n)
                .zip(row1[ox..].iter().step_by(n));
            for (d, (&a, &c)) in lane[..self.x_counts[ox]].iter_mut().zip(samples) {
                *d = a + ty * (c - a);
            }
        }
        // horizontal pass: between lattice samples i and i + 1 the
        // fractions are k / n
        for (b, plane) in planes.chunks_exact_mut(w).enumerate().take(self.bands()) {
            let (_, ox) = self.pattern.position_of(b);
            let lane = &lanes[b * stride..b * stride + self.x_counts[ox]];
            let last = ox + n * (lane.len() - 1);
            plane[..ox].fill(lane[0]);
            let inner = &mut plane[ox..last];
            match n {
                2 => self.spans::<2>(lane, inner),
                3 => self.spans::<3>(lane, inner),
                4 => self.spans::<4>(lane, inner),
                5 => self.spans::<5>(lane, inner),
                _ => {
                    for (pair, span) in lane.windows(2).zip(inner.chunks_exact_mut(n)) {
                        let (a, d) = (pair[0], pair[1] - pair[0]);
                        for (v, &t) in span.iter_mut().zip(&self.fractions) {
                            *v = a + t * d;
                        }
                    }
                }
            }
            plane[last..].fill(lane[lane.len() - 1]);
        }
    }

    #[inline(always)]
    fn spans<const N: usize>(&self, lane: &[f32], inner: &mut [f32]) {
        let fractions: &[f32; N] = self.fractions[..N].try_into().unwrap();
        for (pair, span) in lane.windows(2).zip(inner.chunks_exact_mut(N)) {
            let (a, d) = (pair[0], pair[1] - pair[0]);
            let span: &mut [f32; N] = span.try_into().unwrap();
            for (v, &t) in span.iter_mut().zip(fractions) {
                *v = a + t * d;
            }
        }
    }

    pub fn demosaic(&self, mosaic: &MosaicImage, wavelengths: Wavelengths) -> Result<Hypercube> {
        if mosaic.width() != self.width
            || mosaic.height() != self.height
            || mosaic.pattern() != &self.pattern
        {
            return Err(Error::ShapeMismatch(format!(
                "demosaicker built for {}x{}, got {}x{} mosaic",
                self.width,
                self.height,
                mosaic.width(),
                mosaic.height()
            )));
        }
        let bands = self.bands();
        if wavelengths.len() != bands {
            return Err(Error::DimensionMismatch {
                expected: bands,
                found: wavelengths.len(),
            });
        }
        let row_len = self.width * bands;
        let mut data = vec![0f32; row_len * self.height];
        const ROWS_PER_TASK: usize = 16;
        data.par_chunks_mut(row_len * ROWS_PER_TASK)
            .enumerate()
            .for_each_init(
                || vec![0f32; self.scratch_len()],
                |scratch, (i, chunk)| {
                    self.demosaic_rows(mosaic.data(), i * ROWS_PER_TASK, chunk, scratch)
                },
            );
        Hypercube::new(self.width, self.height, wavelengths, data)
    }
}

/// Upsamples every band of `mosaic` to full resolution. `wavelengths` labels
/// the `n²` output bands.
pub fn bilinear_demosaic(mosaic: &MosaicImage, wavelengths: &Wavelengths) -> Result<Hypercube> {
    BilinearDemosaicker::new(mosaic.width(), mosaic.height(), mosaic.pattern())?
        .demosaic(mosaic, wavelengths.clone())
}

/// Calibration matrix laid out for the per-pixel correction kernel.
#[derive(Debug, Clone)]
pub struct Corrector {
    in_bands: usize,
    out_bands: usize,
    // transposed: in_bands rows of out_bands
    transposed: Vec<f32>,
}

impl Corrector {
    pub fn new(c: &CalibrationMatrix) -> Self {
        let mut transposed = vec![0f32; c.rows() * c.cols()];
        for r in 0..c.rows() {
            for k in 0..c.cols() {
                transposed[k * c.rows() + r] = c.get(r, k) as f32;
            }
        }
        Corrector {
            in_bands: c.cols(),
            out_bands: c.rows(),
            transposed,
        }
    }

    pub fn in_bands(&self) -> usize {
        self.in_bands
    }

    pub fn out_bands(&self) -> usize {
        self.out_bands
    }

    avx2_dispatch! {
        Corrector:
        /// Corrects whole pixels from `input` into `out`.
        pub fn correct => correct_inner(&self, input: &[f32], out: &mut [f32], clamp: bool)
    }

    #[inline(always)]
    fn correct_inner(&self, input: &[f32], out: &mut [f32], clamp: bool) {
        match self.out_bands {
            4 => self.correct_fixed::<4>(input, out, clamp),
            9 => self.correct_fixed::<9>(input, out, clamp),
            16 => self.correct_fixed::<16>(input, out, clamp),
            25 => self.correct_fixed::<25>(input, out, clamp),
            _ => self.correct_any(input, out, clamp),
        }
    }

    avx2_dispatch! {
        Corrector:
        /// Corrects `len` pixels stored as one plane per band.
        pub fn correct_planes => correct_planes_inner(
            &self, input: &[f32], out: &mut [f32], len: usize, clamp: bool
        )
    }

    // per output value the same sum, in the same order, as `correct`
    #[inline(always)]
    fn correct_planes_inner(&self, input: &[f32], out: &mut [f32], len: usize, clamp: bool) {
        // register blocking: OUTS output planes x PIXELS pixels per pass
        const OUTS: usize = 4;
        const PIXELS: usize = 16;
        let (ni, no) = (self.in_bands, self.out_bands);
        let input = &input[..ni * len];
        let full_px = len - len % PIXELS;
        let full_out = no - no % OUTS;
        for start in (0..full_px).step_by(PIXELS) {
            for o0 in (0..full_out).step_by(OUTS) {
                let mut acc = [[0f32; PIXELS]; OUTS];
                for (i, src) in input.chunks_exact(len).enumerate() {
                    let v: &[f32; PIXELS] = src[start..start + PIXELS].try_into().unwrap();
                    let c: &[f32; OUTS] =
                        self.transposed[i * no + o0..][..OUTS].try_into().unwrap();
                    for (row, &c) in acc.iter_mut().zip(c) {
                        for (a, &v) in row.iter_mut().zip(v) {
                            *a += c * v;
                        }
                    }
                }
                for (k, row) in acc.iter().enumerate() {
                    self.store_plane(row, &mut out[(o0 + k) * len + start..][..PIXELS], clamp);
                }
            }
        }
        // leftover outputs and pixels, one value at a time
        for o in 0..no {
            let first = if o < full_out { full_px } else { 0 };
            for x in first..len {
                let mut acc = 0f32;
                for i in 0..ni {
                    acc += self.transposed[i * no + o] * input[i * len + x];
                }
                out[o * len + x] = if clamp { acc.max(0.0) } else { acc };
            }
        }
    }

    #[inline(always)]
    fn store_plane(&self, acc: &[f32], dst: &mut [f32], clamp: bool) {
        for (d, &a) in dst.iter_mut().zip(acc) {
            *d = if clamp { a.max(0.0) } else { a };
        }
    }

    // same arithmetic as `correct_any`, with the output width known at
    // compile time so the accumulator lives in registers
    #[inline(always)]
    fn correct_fixed<const O: usize>(&self, input: &[f32], out: &mut [f32], clamp: bool) {
        for (src, dst) in input
            .chunks_exact(self.in_bands)
            .zip(out.chunks_exact_mut(O))
        {
            let mut acc = [0f32; O];
            for (&v, col) in src.iter().zip(self.transposed.chunks_exact(O)) {
                for (a, &c) in acc.iter_mut().zip(col) {
                    *a += c * v;
                }
            }
            if clamp {
                for a in acc.iter_mut() {
                    *a = a.max(0.0);
                }
            }
            dst.copy_from_slice(&acc);
        }
    }

    #[inline(always)]
    fn correct_any(&self, input: &[f32], out: &mut [f32], clamp: bool) {
        let (ni, no) = (self.in_bands, self.out_bands);
        for (src, dst) in input.chunks_exact(ni).zip(out.chunks_exact_mut(no)) {
            dst.fill(0.0);
            for (&v, col) in src.iter().zip(self.transposed.chunks_exact(no)) {
                for (d, &c) in dst.iter_mut().zip(col) {
                    *d += c * v;
                }
            }
            if clamp {
                for d in dst.iter_mut() {
                    *d = d.max(0.0);
                }
            }
        }
    }

    pub fn apply(&self, cube: &Hypercube, labels: &Wavelengths, clamp: bool) -> Result<Hypercube> {
        if cube.bands() != self.in_bands {
            return Err(Error::DimensionMismatch {
                expected: self.in_bands,
                found: cube.bands(),
            });
        }
        if labels.len() != self.out_bands {
            return Err(Error::DimensionMismatch {
                expected: self.out_bands,
                found: labels.len(),
            });
        }
        let pixels_per_task = 4096;
        let mut data = vec![0f32; cube.width() * cube.height() * self.out_bands];
        data.par_chunks_mut(pixels_per_task * self.out_bands)
            .zip(cube.data().par_chunks(pixels_per_task * self.in_bands))
            .for_each(|(dst, src)| self.correct(src, dst, clamp));
        Hypercube::new(cube.width(), cube.height(), labels.clone(), data)
    }
}

/// Per-pixel `C · spectrum`, without clamping. `labels` names the output
/// bands.
pub fn apply_correction(
    cube: &Hypercube,
    c: &CalibrationMatrix,
    labels: &Wavelengths,
) -> Result<Hypercube> {
    Corrector::new(c).apply(cube, labels, false)
}

/// As [`apply_correction`], with negative outputs clamped to zero.
pub fn apply_correction_clamped(
    cube: &Hypercube,
    c: &CalibrationMatrix,
    labels: &Wavelengths,
) -> Result<Hypercube> {
    Corrector::new(c).apply(cube, labels, true)
}

/// Bilinear demosaicking (or a supplied refined cube) followed by spectral
/// correction, clamped at zero. The result has one band per ideal band.
pub fn demosaic_pipeline(
    mosaic: &MosaicImage,
    sensor: &SensorModel,
    c: &CalibrationMatrix,
    refined: Option<&Hypercube>,
) -> Result<Hypercube> {
    c.check_sensor(sensor)?;
    if mosaic.pattern() != sensor.pattern() {
        return Err(Error::ShapeMismatch(
            "mosaic pattern differs from the sensor's".into(),
        ));
    }
    let labels = sensor.ideal_centers()?;
    let interpolated;
    let cube = match refined {
        Some(cube) => {
            let expected = (mosaic.width(), mosaic.height(), sensor.measured_bands());
            if cube.shape() != expected {
                return Err(Error::ShapeMismatch(format!(
                    "refined cube is {:?}, expected {:?}",
                    cube.shape(),
                    expected
                )));
            }
            cube
        }
        None => {
            interpolated = bilinear_demosaic(mosaic, sensor.measured_centers())?;
            &interpolated
        }
    };
    apply_correction_clamped(cube, c, &labels)
}

/// For each target wavelength, the band of `cube` with the nearest label.
pub fn select_nearest_bands(cube: &Hypercube, targets: &Wavelengths) -> Result<Hypercube> {
    let labels = cube.wavelengths().values();
    let picks: Vec<usize> = targets
        .values()
        .iter()
        .map(|&t| {
            let mut best = 0;
            for (i, &l) in labels.iter().enumerate() {
                if (l - t).abs() < (labels[best] - t).abs() {
                    best = i;
                }
            }
            best
        })
        .collect();
    let mut data = Vec::with_capacity(cube.width() * cube.height() * picks.len());
    for px in cube.data().chunks_exact(cube.bands()) {
        data.extend(picks.iter().map(|&b| px[b]));
    }
    Hypercube::new(cube.width(), cube.height(), targets.clone(), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensor::subsample;

    fn labels(n: usize) -> Wavelengths {
        Wavelengths::linspace(470.0, 620.0, n).unwrap()
    }

    fn mosaic_of(cube: &Hypercube, n: usize) -> MosaicImage {
        subsample(cube, &MosaicPattern::row_major(n).unwrap()).unwrap()
    }

    #[test]
    fn split_counts() {
        let p = MosaicPattern::row_major(4).unwrap();
        let m = MosaicImage::new(8, 8, (0..64).map(|v| v as f32).collect(), p.clone()).unwrap();
        let split = split_bands(&m);
        assert!(split.iter().all(|b| b.samples.len() == 4));
        let m4 = MosaicImage::new(4, 4, vec![0.0; 16], p.clone()).unwrap();
        assert!(split_bands(&m4).iter().all(|b| b.samples.len() == 1));
        let odd = MosaicImage::new(7, 5, vec![0.0; 35], p).unwrap();
        assert_eq!(
            split_bands(&odd)
                .iter()
                .map(|b| b.samples.len())
                .sum::<usize>(),
            35
        );
    }

    #[test]
    fn constant_cube_round_trips() {
        let cube = Hypercube::from_fn(13, 9, labels(16), |_, _, b| 0.05 * b as f32 + 0.1).unwrap();
        let out = bilinear_demosaic(&mosaic_of(&cube, 4), &labels(16)).unwrap();
        assert_eq!(out, cube);
    }

    #[test]
    fn single_tile_is_constant_per_band() {
        let p = MosaicPattern::new(4, (0..16).rev().collect()).unwrap();
        let m = MosaicImage::new(4, 4, (0..16).map(|v| v as f32).collect(), p).unwrap();
        let out = bilinear_demosaic(&m, &labels(16)).unwrap();
        for y in 0..4 {
            for x in 0..4 {
                for b in 0..16 {
                    assert_eq!(out.get(x, y, b), (15 - b) as f32);
                }
            }
        }
    }

    #[test]
    fn too_small_is_an_error() {
        let m =
            MosaicImage::new(3, 8, vec![0.0; 24], MosaicPattern::row_major(4).unwrap()).unwrap();
        assert!(matches!(
            bilinear_demosaic(&m, &labels(16)),
            Err(Error::ImageTooSmall { .. })
        ));
    }

    #[test]
    fn affine_planes_exact_between_samples() {
        let (w, h) = (23, 18);
        let cube = Hypercube::from_fn(w, h, labels(4), |x, y, b| {
            0.01 * x as f32 + 0.02 * y as f32 + 0.1 * b as f32
        })
        .unwrap();
        let out = bilinear_demosaic(&mosaic_of(&cube, 2), &labels(4)).unwrap();
        for y in 1..h - 1 {
            for x in 1..w - 1 {
                for b in 0..4 {
                    assert!((out.get(x, y, b) - cube.get(x, y, b)).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn correction_arithmetic() {
        let w = Wavelengths::new(vec![500.0, 510.0, 520.0]).unwrap();
        let cube = Hypercube::new(1, 1, w.clone(), vec![0.1, 0.2, 0.3]).unwrap();
        let ones = CalibrationMatrix::new(2, 3, vec![1.0; 6]).unwrap();
        let out =
            apply_correction(&cube, &ones, &Wavelengths::new(vec![505.0, 515.0]).unwrap()).unwrap();
        assert!(out.data().iter().all(|v| (v - 0.6).abs() < 1e-7));
        let same = apply_correction(&cube, &CalibrationMatrix::identity(3), &w).unwrap();
        assert_eq!(same, cube);
        assert!(matches!(
            apply_correction(&cube, &CalibrationMatrix::identity(2), &w),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn clamping_only_in_clamped_variant() {
        let w = Wavelengths::new(vec![500.0, 510.0]).unwrap();
        let cube = Hypercube::new(1, 1, w.clone(), vec![0.5, 0.1]).unwrap();
        let c = CalibrationMatrix::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        assert!((apply_correction(&cube, &c, &w).unwrap().data()[1] + 0.4).abs() < 1e-7);
        assert_eq!(
            apply_correction_clamped(&cube, &c, &w).unwrap().data()[1],
            0.0
        );
    }

    #[test]
    fn fixed_width_kernel_matches_generic() {
        for n in [2, 3, 4, 5] {
            let bands = n * n;
            let entries = (0..bands * bands)
                .map(|i| ((i * 37) % 23) as f64 / 23.0 - 0.4)
                .collect();
            let c = CalibrationMatrix::new(bands, bands, entries).unwrap();
            let k = Corrector::new(&c);
            let input: Vec<f32> = (0..7 * bands)
                .map(|i| ((i * 13) % 17) as f32 / 17.0)
                .collect();
            let mut fast = vec![0.0; input.len()];
            let mut slow = vec![0.0; input.len()];
            k.correct(&input, &mut fast, true);
            k.correct_any(&input, &mut slow, true);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn planar_kernels_match_interleaved() {
        let (w, h) = (29, 11);
        let cube = Hypercube::from_fn(w, h, labels(16), |x, y, b| {
            ((x * 5 + y * 3 + b * 7) % 13) as f32 / 13.0
        })
        .unwrap();
        let mosaic = mosaic_of(&cube, 4);
        let d = BilinearDemosaicker::new(w, h, mosaic.pattern()).unwrap();
        let full = d.demosaic(&mosaic, labels(16)).unwrap();
        let entries = (0..256)
            .map(|i| ((i * 37) % 23) as f64 / 23.0 - 0.4)
            .collect();
        let k = Corrector::new(&CalibrationMatrix::new(16, 16, entries).unwrap());

        let mut lanes = vec![0.0; d.lanes_len()];
        let mut planes = vec![0.0; 16 * w];
        let mut corrected = vec![0.0; 16 * w];
        let mut px = vec![0.0; 16 * w];
        for y in 0..h {
            d.demosaic_planes(mosaic.data(), y, &mut planes, &mut lanes);
            for x in 0..w {
                for b in 0..16 {
                    assert_eq!(planes[b * w + x], full.get(x, y, b));
                }
            }
            k.correct_planes(&planes, &mut corrected, w, true);
            k.correct(&full.data()[y * w * 16..(y + 1) * w * 16], &mut px, true);
            for x in 0..w {
                for b in 0..16 {
                    assert_eq!(corrected[b * w + x], px[x * 16 + b]);
                }
            }
        }
    }

    #[test]
    fn nearest_band_selection() {
        let cube = Hypercube::from_fn(1, 1, labels(4), |_, _, b| b as f32).unwrap();
        let picked =
            select_nearest_bands(&cube, &Wavelengths::new(vec![471.0, 600.0]).unwrap()).unwrap();
        assert_eq!(picked.data(), &[0.0, 3.0]);
    }
}

//! Full-reference quality metrics (L1, PSNR, SSIM) and report aggregation.

use std::fmt::Write as _;

use crate::colorimetry::RgbImage;
use crate::cube::Hypercube;
use crate::error::{Error, Result};

/// SSIM Gaussian window: 11 taps, σ = 1.5.
pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;
/// Dynamic range assumed for SSIM (reflectance-normalised data).
pub const SSIM_DYNAMIC_RANGE: f64 = 1.0;

/// Interleaved multi-channel image data the metrics can compare.
pub trait ImageData {
    fn width(&self) -> usize;
    fn height(&self) -> usize;
    fn channels(&self) -> usize;
    /// Samples interleaved by pixel, row-major.
    fn samples(&self) -> &[f32];
}

impl ImageData for Hypercube {
    fn width(&self) -> usize {
        Hypercube::width(self)
    }
    fn height(&self) -> usize {
        Hypercube::height(self)
    }
    fn channels(&self) -> usize {
        self.bands()
    }
    fn samples(&self) -> &[f32] {
        self.data()
    }
}

impl ImageData for RgbImage {
    fn width(&self) -> usize {
        RgbImage::width(self)
    }
    fn height(&self) -> usize {
        RgbImage::height(self)
    }
    fn channels(&self) -> usize {
        3
    }
    fn samples(&self) -> &[f32] {
        self.data()
    }
}

fn check_shapes<A: ImageData + ?Sized, B: ImageData + ?Sized>(a: &A, b: &B) -> Result<()> {
    let sa = (a.width(), a.height(), a.channels());
    let sb = (b.width(), b.height(), b.channels());
    if sa != sb {
        return Err(Error::ShapeMismatch(format!("{sa:?} vs {sb:?}")));
    }
    Ok(())
}

/// Mean absolute difference over all samples.
pub fn l1_error<A: ImageData + ?Sized, B: ImageData + ?Sized>(a: &A, b: &B) -> Result<f64> {
    check_shapes(a, b)?;
    let sum: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| (x as f64 - y as f64).abs())
        .sum();
    Ok(sum / a.samples().len() as f64)
}

pub fn mse<A: ImageData + ?Sized, B: ImageData + ?Sized>(a: &A, b: &B) -> Result<f64> {
    check_shapes(a, b)?;
    let sum: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| (x as f64 - y as f64).powi(2))
        .sum();
    Ok(sum / a.samples().len() as f64)
}

/// Peak signal-to-noise ratio in dB. Identical inputs give
/// [`Error::InfinitePsnr`].
pub fn psnr<A: ImageData + ?Sized, B: ImageData + ?Sized>(a: &A, b: &B, peak: f64) -> Result<f64> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Err(Error::InfinitePsnr);
    }
    Ok(10.0 * (peak * peak / mse).log10())
}

fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let radius = (SSIM_WINDOW / 2) as f64;
    let mut k = [0.0; SSIM_WINDOW];
    for (i, v) in k.iter_mut().enumerate() {
        let d = i as f64 - radius;
        *v = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let sum: f64 = k.iter().sum();
    k.map(|v| v / sum)
}

/// Separable 'valid' filtering: output is `(w - 10) x (h - 10)`.
fn filter_valid(plane: &[f64], w: usize, h: usize, k: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let ow = w - SSIM_WINDOW + 1;
    let oh = h - SSIM_WINDOW + 1;
    let mut rows = vec![0.0; ow * h];
    for y in 0..h {
        let src = &plane[y * w..(y + 1) * w];
        for x in 0..ow {
            rows[y * ow + x] = k
                .iter()
                .zip(&src[x..x + SSIM_WINDOW])
                .map(|(k, v)| k * v)
                .sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = k
                .iter()
                .enumerate()
                .map(|(i, k)| k * rows[(y + i) * ow + x])
                .sum();
        }
    }
    out
}

/// Mean SSIM of one plane pair.
fn ssim_plane(a: &[f64], b: &[f64], w: usize, h: usize) -> f64 {
    let k = gaussian_kernel();
    let c1 = (SSIM_K1 * SSIM_DYNAMIC_RANGE).powi(2);
    let c2 = (SSIM_K2 * SSIM_DYNAMIC_RANGE).powi(2);
    let aa: Vec<f64> = a.iter().map(|v| v * v).collect();
    let bb: Vec<f64> = b.iter().map(|v| v * v).collect();
    let ab: Vec<f64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    let mu_a = filter_valid(a, w, h, &k);
    let mu_b = filter_valid(b, w, h, &k);
    let e_aa = filter_valid(&aa, w, h, &k);
    let e_bb = filter_valid(&bb, w, h, &k);
    let e_ab = filter_valid(&ab, w, h, &k);
    let mut sum = 0.0;
    for i in 0..mu_a.len() {
        let (ma, mb) = (mu_a[i], mu_b[i]);
        let va = e_aa[i] - ma * ma;
        let vb = e_bb[i] - mb * mb;
        let cov = e_ab[i] - ma * mb;
        sum +=
            ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
    sum / mu_a.len() as f64
}

/// Single-scale SSIM, computed per channel over valid window positions and
/// averaged over channels.
pub fn ssim<A: ImageData + ?Sized, B: ImageData + ?Sized>(a: &A, b: &B) -> Result<f64> {
    check_shapes(a, b)?;
    let (w, h, c) = (a.width(), a.height(), a.channels());
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            min_width: SSIM_WINDOW,
            min_height: SSIM_WINDOW,
        });
    }
    let plane = |s: &[f32], ch: usize| -> Vec<f64> {
        s.iter().skip(ch).step_by(c).map(|&v| v as f64).collect()
    };
    let total: f64 = (0..c)
        .map(|ch| ssim_plane(&plane(a.samples(), ch), &plane(b.samples(), ch), w, h))
        .sum();
    Ok(total / c as f64)
}

/// Metrics of one prediction against its reference.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityRecord {
    pub name: String,
    pub l1: f64,
    /// `f64::INFINITY` for identical inputs.
    pub psnr_db: f64,
    pub ssim: f64,
}

/// L1, PSNR (peak 1) and SSIM of `pred` against `reference`.
pub fn evaluate<A: ImageData + ?Sized, B: ImageData + ?Sized>(
    name: &str,
    pred: &A,
    reference: &B,
) -> Result<QualityRecord> {
    let psnr_db = match psnr(pred, reference, 1.0) {
        Err(Error::InfinitePsnr) => f64::INFINITY,
        other => other?,
    };
    Ok(QualityRecord {
        name: name.to_string(),
        l1: l1_error(pred, reference)?,
        psnr_db,
        ssim: ssim(pred, reference)?,
    })
}

/// Mean and sample standard deviation of one metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Sample (n - 1) standard deviation; 0 when only one record exists.
    pub std: f64,
}

fn summarize(values: &[f64]) -> Summary {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return Summary { mean, std: 0.0 };
    }
    if !mean.is_finite() {
        return Summary {
            mean,
            std: f64::NAN,
        };
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Summary {
        mean,
        std: var.sqrt(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    /// Sorted by name (then by value) so output does not depend on input order.
    pub records: Vec<QualityRecord>,
    pub l1: Summary,
    pub psnr_db: Summary,
    pub ssim: Summary,
}

impl QualityReport {
    pub fn count(&self) -> usize {
        self.records.len()
    }

    /// Standard deviations are placeholders (zero) when only one record exists.
    pub fn single_record(&self) -> bool {
        self.records.len() == 1
    }

    /// One row per record, then `mean`, `std` and `n` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,l1,psnr_db,ssim\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                csv_field(&r.name),
                num(r.l1, 8),
                num(r.psnr_db, 6),
                num(r.ssim, 8)
            );
        }
        let _ = writeln!(
            out,
            "mean,{},{},{}",
            num(self.l1.mean, 8),
            num(self.psnr_db.mean, 6),
            num(self.ssim.mean, 8)
        );
        let _ = writeln!(
            out,
            "std,{},{},{}",
            num(self.l1.std, 8),
            num(self.psnr_db.std, 6),
            num(self.ssim.std, 8)
        );
        let n = self.count();
        let _ = writeln!(out, "n,{n},{n},{n}");
        out
    }

    /// Human-readable `mean ± std` table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<24} {:>12} {:>12} {:>10}",
            "image", "L1", "PSNR (dB)", "SSIM"
        );
        for r in &self.records {
            let _ = writeln!(
                out,
                "{:<24} {:>12} {:>12} {:>10}",
                r.name,
                num(r.l1, 4),
                num(r.psnr_db, 2),
                num(r.ssim, 4)
            );
        }
        let _ = writeln!(out);
        let note = if self.single_record() {
            " (single record, std = 0)"
        } else {
            ""
        };
        let _ = writeln!(out, "n = {}{note}", self.count());
        let _ = writeln!(
            out,
            "L1    {} ± {}",
            num(self.l1.mean, 3),
            num(self.l1.std, 3)
        );
        let _ = writeln!(
            out,
            "PSNR  {} ± {}",
            num(self.psnr_db.mean, 1),
            num(self.psnr_db.std, 2)
        );
        let _ = writeln!(
            out,
            "SSIM  {} ± {}",
            num(self.ssim.mean, 3),
            num(self.ssim.std, 3)
        );
        out
    }
}

fn num(v: f64, decimals: usize) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.decimals$}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Mean and sample standard deviation of each metric over `records`.
pub fn aggregate(records: &[QualityRecord]) -> Result<QualityReport> {
    if records.is_empty() {
        return Err(Error::Empty("quality records"));
    }
    let mut records = records.to_vec();
    records.sort_by(|a, b| {
        a.name
            .cmp(&b.name)
            .then(a.l1.total_cmp(&b.l1))
            .then(a.psnr_db.total_cmp(&b.psnr_db))
            .then(a.ssim.total_cmp(&b.ssim))
    });
    let column = |f: fn(&QualityRecord) -> f64| records.iter().map(f).collect::<Vec<_>>();
    Ok(QualityReport {
        l1: summarize(&column(|r| r.l1)),
        psnr_db: summarize(&column(|r| r.psnr_db)),
        ssim: summarize(&column(|r| r.ssim)),
        records,
    })
}

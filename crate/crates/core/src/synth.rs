//! Seeded synthetic scenes for tests, examples and benchmarking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colorimetry::ExtinctionTable;
use crate::cube::{Hypercube, Wavelengths};
use crate::error::{Error, Result};
use crate::mosaic::{MosaicImage, MosaicPattern};

/// Shape of a synthetic reflectance scene.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneParams {
    pub width: usize,
    pub height: usize,
    /// Number of smooth spectral components mixed per pixel.
    pub components: usize,
    /// Spacing in pixels of the coarse grid the mixing weights vary on.
    pub cell: usize,
    pub seed: u64,
}

impl SceneParams {
    pub fn new(width: usize, height: usize, seed: u64) -> Self {
        SceneParams {
            width,
            height,
            components: 4,
            cell: 8,
            seed,
        }
    }
}

/// A reflectance cube in `[0, 1]` with smooth spectra and smoothly varying
/// materials: each pixel mixes a few Gaussian-shaped spectra with weights
/// bilinearly interpolated from a coarse random grid.
pub fn reflectance_scene(params: &SceneParams, wavelengths: &Wavelengths) -> Result<Hypercube> {
    if params.components == 0 || params.cell == 0 {
        return Err(Error::InvalidParameter {
            field: "scene",
            reason: "components and cell must be positive".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (lo, hi) = (wavelengths.first(), wavelengths.last());
    let span = (hi - lo).max(1.0);

    let spectra: Vec<Vec<f64>> = (0..params.components)
        .map(|_| {
            let center = lo + span * rng.random_range(-0.1..1.1);
            let width = span * rng.random_range(0.15..0.8);
            let base = rng.random_range(0.05..0.3);
            let height = rng.random_range(0.3..0.65);
            wavelengths
                .values()
                .iter()
                .map(|&l| base + height * (-0.5 * ((l - center) / width).powi(2)).exp())
                .collect()
        })
        .collect();

    let gw = params.width.div_ceil(params.cell) + 1;
    let gh = params.height.div_ceil(params.cell) + 1;
    let grid: Vec<f64> = (0..gw * gh * params.components)
        .map(|_| rng.random::<f64>())
        .collect();
    let k = params.components;
    let cell = params.cell as f64;

    let bands = wavelengths.len();
    let mut data = Vec::with_capacity(params.width * params.height * bands);
    let mut mix = vec![0.0; k];
    for y in 0..params.height {
        let gy = y as f64 / cell;
        let (y0, ty) = (gy as usize, gy.fract());
        for x in 0..params.width {
            let gx = x as f64 / cell;
            let (x0, tx) = (gx as usize, gx.fract());
            let at = |i: usize, j: usize, c: usize| grid[((j * gw) + i) * k + c];
            let mut total = 0.0;
            for (c, m) in mix.iter_mut().enumerate() {
                let top = at(x0, y0, c) * (1.0 - tx) + at(x0 + 1, y0, c) * tx;
                let bottom = at(x0, y0 + 1, c) * (1.0 - tx) + at(x0 + 1, y0 + 1, c) * tx;
                *m = top * (1.0 - ty) + bottom * ty + 1e-3;
                total += *m;
            }
            for b in 0..bands {
                let v: f64 = mix.iter().zip(&spectra).map(|(m, s)| m * s[b]).sum::<f64>() / total;
                data.push(v.clamp(0.0, 1.0) as f32);
            }
        }
    }
    Hypercube::new(params.width, params.height, wavelengths.clone(), data)
}

/// A Beer–Lambert tissue phantom: saturation rises linearly from 0 at the
/// left edge to 1 at the right edge, with a flat loss term growing from top
/// to bottom. Returns the cube and the true saturation of each column.
pub fn oxygenation_phantom(
    width: usize,
    height: usize,
    wavelengths: &Wavelengths,
    extinction: &ExtinctionTable,
) -> Result<(Hypercube, Vec<f64>)> {
    let so2: Vec<f64> = (0..width)
        .map(|x| {
            if width > 1 {
                x as f64 / (width - 1) as f64
            } else {
                0.5
            }
        })
        .collect();
    let spectra = wavelengths
        .values()
        .iter()
        .map(|&l| match (extinction.hbo2(l), extinction.hb(l)) {
            (Some(o), Some(d)) => Ok((o, d)),
            _ => Err(Error::InvalidParameter {
                field: "wavelengths",
                reason: format!("{l} nm outside the extinction table"),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    let cube = Hypercube::from_fn(width, height, wavelengths.clone(), |x, y, b| {
        let (o, d) = spectra[b];
        let loss = 0.1 + 0.4 * y as f64 / height as f64;
        (-(so2[x] * o + (1.0 - so2[x]) * d) - loss).exp() as f32
    })?;
    Ok((cube, so2))
}

/// Independent uniform values in `[lo, hi)`.
pub fn uniform_cube(
    width: usize,
    height: usize,
    wavelengths: &Wavelengths,
    lo: f32,
    hi: f32,
    seed: u64,
) -> Result<Hypercube> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..width * height * wavelengths.len())
        .map(|_| rng.random_range(lo..hi))
        .collect();
    Hypercube::new(width, height, wavelengths.clone(), data)
}

/// One raw frame with its white and dark references, as a camera would
/// deliver them.
#[derive(Debug, Clone)]
pub struct RawFrame {
    pub raw: MosaicImage,
    pub white: MosaicImage,
    pub dark: MosaicImage,
}

/// A seeded raw frame: dark level around 0.02, white level around 0.9 with
/// a mild vignette, scene signal in between.
pub fn raw_frame(
    width: usize,
    height: usize,
    pattern: &MosaicPattern,
    seed: u64,
) -> Result<RawFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (cx, cy) = (0.5 * width as f64, 0.5 * height as f64);
    let r2max = cx * cx + cy * cy;
    let n = width * height;
    let mut raw = Vec::with_capacity(n);
    let mut white = Vec::with_capacity(n);
    let mut dark = Vec::with_capacity(n);
    for y in 0..height {
        for x in 0..width {
            let (dx, dy) = (x as f64 - cx, y as f64 - cy);
            let vignette = 1.0 - 0.3 * (dx * dx + dy * dy) / r2max;
            let d = 0.02 + 0.002 * rng.random::<f64>();
            let w = d + 0.9 * vignette * (1.0 + 0.01 * rng.random::<f64>());
            let scene = rng.random::<f64>();
            dark.push(d as f32);
            white.push(w as f32);
            raw.push((d + scene * (w - d)) as f32);
        }
    }
    Ok(RawFrame {
        raw: MosaicImage::new(width, height, raw, pattern.clone())?,
        white: MosaicImage::new(width, height, white, pattern.clone())?,
        dark: MosaicImage::new(width, height, dark, pattern.clone())?,
    })
}

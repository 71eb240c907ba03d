//! The classical per-frame path at frame rate: flat-field, bilinear
//! demosaic, spectral correction and sRGB rendering, with per-stage timing.
//!
//! After flat-fielding the frame is processed one row at a time, with one
//! plane per band, so the working set stays cache-resident and every kernel
//! runs over contiguous memory.

use std::time::{Duration, Instant};

use crate::colorimetry::{d65_illuminant, SrgbRenderer};
use crate::demosaic::{BilinearDemosaicker, Corrector};
use crate::error::{Error, Result};
use crate::mosaic::MosaicImage;
use crate::sensor::{CalibrationMatrix, SensorModel, FLAT_FIELD_EPSILON};

pub const STAGES: [&str; 4] = ["white_balance", "demosaic", "correction", "srgb"];

/// Time spent in each stage of one frame, in [`STAGES`] order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StageTimes {
    pub stages: [Duration; 4],
    pub total: Duration,
}

/// Precomputed state for one sensor, calibration and reference pair.
#[derive(Debug, Clone)]
pub struct FramePipeline {
    width: usize,
    height: usize,
    dark: Vec<f32>,
    // 1 / (white - dark), or 0 where the reference is too dim
    gain: Vec<f32>,
    demosaicker: BilinearDemosaicker,
    corrector: Corrector,
    renderer: SrgbRenderer,
    balanced: Vec<f32>,
    // per-row working set, one plane per band
    lanes: Vec<f32>,
    measured: Vec<f32>,
    corrected: Vec<f32>,
}

impl FramePipeline {
    pub fn new(
        sensor: &SensorModel,
        c: &CalibrationMatrix,
        white: &MosaicImage,
        dark: &MosaicImage,
    ) -> Result<Self> {
        c.check_sensor(sensor)?;
        let (width, height) = (white.width(), white.height());
        if dark.width() != width || dark.height() != height {
            return Err(Error::ShapeMismatch(format!(
                "white {}x{}, dark {}x{}",
                width,
                height,
                dark.width(),
                dark.height()
            )));
        }
        if white.pattern() != sensor.pattern() || dark.pattern() != sensor.pattern() {
            return Err(Error::ShapeMismatch(
                "reference frame pattern differs from the sensor's".into(),
            ));
        }
        let gain = white
            .data()
            .iter()
            .zip(dark.data())
            .map(|(&w, &d)| {
                let den = w - d;
                if den < FLAT_FIELD_EPSILON {
                    0.0
                } else {
                    1.0 / den
                }
            })
            .collect();
        let demosaicker = BilinearDemosaicker::new(width, height, sensor.pattern())?;
        let renderer = SrgbRenderer::new(&sensor.ideal_centers()?, &d65_illuminant())?;
        Ok(FramePipeline {
            width,
            height,
            dark: dark.data().to_vec(),
            gain,
            lanes: vec![0.0; demosaicker.lanes_len()],
            measured: vec![0.0; width * c.cols()],
            corrected: vec![0.0; width * c.rows()],
            balanced: vec![0.0; width * height],
            demosaicker,
            corrector: Corrector::new(c),
            renderer,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Processes one raw frame into interleaved sRGB `rgb` (`3 · width ·
    /// height` values) and returns the stage timings.
    pub fn process(&mut self, raw: &[f32], rgb: &mut [f32]) -> Result<StageTimes> {
        let pixels = self.width * self.height;
        if raw.len() != pixels || rgb.len() != 3 * pixels {
            return Err(Error::SizeMismatch {
                field: "frame",
                expected: pixels,
                found: raw.len(),
            });
        }
        let mut times = StageTimes::default();
        let start = Instant::now();

        for (((b, &r), &d), &g) in self
            .balanced
            .iter_mut()
            .zip(raw)
            .zip(&self.dark)
            .zip(&self.gain)
        {
            *b = ((r - d) * g).max(0.0);
        }
        let mut mark = Instant::now();
        times.stages[0] = mark - start;

        let w = self.width;
        for y in 0..self.height {
            self.demosaicker.demosaic_planes(
                &self.balanced,
                y,
                &mut self.measured,
                &mut self.lanes,
            );
            let t1 = Instant::now();
            self.corrector
                .correct_planes(&self.measured, &mut self.corrected, w, true);
            let t2 = Instant::now();
            self.renderer
                .render_planes(&self.corrected, w, &mut rgb[3 * y * w..3 * (y + 1) * w]);
            let t3 = Instant::now();
            times.stages[1] += t1 - mark;
            times.stages[2] += t2 - t1;
            times.stages[3] += t3 - t2;
            mark = t3;
        }
        times.total = mark - start;
        Ok(times)
    }
}

/// Min, median and 95th percentile of a set of durations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingStats {
    pub min: Duration,
    pub median: Duration,
    pub p95: Duration,
}

impl TimingStats {
    pub fn from_samples(samples: &[Duration]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Empty("timing samples"));
        }
        let mut s = samples.to_vec();
        s.sort();
        let n = s.len();
        let median = if n % 2 == 1 {
            s[n / 2]
        } else {
            (s[n / 2 - 1] + s[n / 2]) / 2
        };
        // nearest rank
        let p95 = s[((0.95 * n as f64).ceil() as usize).clamp(1, n) - 1];
        Ok(TimingStats {
            min: s[0],
            median,
            p95,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatencyReport {
    pub width: usize,
    pub height: usize,
    pub iterations: usize,
    pub stages: Vec<(&'static str, TimingStats)>,
    pub total: TimingStats,
}

impl LatencyReport {
    pub fn from_runs(width: usize, height: usize, runs: &[StageTimes]) -> Result<Self> {
        let stages = STAGES
            .iter()
            .enumerate()
            .map(|(i, &name)| {
                let samples: Vec<Duration> = runs.iter().map(|r| r.stages[i]).collect();
                Ok((name, TimingStats::from_samples(&samples)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let totals: Vec<Duration> = runs.iter().map(|r| r.total).collect();
        Ok(LatencyReport {
            width,
            height,
            iterations: runs.len(),
            stages,
            total: TimingStats::from_samples(&totals)?,
        })
    }

    /// Sum of the stage medians.
    pub fn stage_median_sum(&self) -> Duration {
        self.stages.iter().map(|(_, s)| s.median).sum()
    }

    pub fn to_text(&self) -> String {
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        let mut out = format!(
            "frame {}x{}, {} iterations\n{:<14} {:>10} {:>10} {:>10}\n",
            self.width, self.height, self.iterations, "stage", "min_ms", "median_ms", "p95_ms"
        );
        let rows = self
            .stages
            .iter()
            .copied()
            .chain(std::iter::once(("total", self.total)));
        for (name, s) in rows {
            out.push_str(&format!(
                "{:<14} {:>10.3} {:>10.3} {:>10.3}\n",
                name,
                ms(s.min),
                ms(s.median),
                ms(s.p95)
            ));
        }
        out
    }
}

/// Runs `iterations` frames through `pipeline` and summarises the timings.
pub fn benchmark(
    pipeline: &mut FramePipeline,
    raw: &[f32],
    iterations: usize,
) -> Result<LatencyReport> {
    if iterations == 0 {
        return Err(Error::InvalidParameter {
            field: "iterations",
            reason: "must be at least 1".into(),
        });
    }
    let mut rgb = vec![0.0; 3 * pipeline.width * pipeline.height];
    let runs = (0..iterations)
        .map(|_| pipeline.process(raw, &mut rgb))
        .collect::<Result<Vec<_>>>()?;
    LatencyReport::from_runs(pipeline.width, pipeline.height, &runs)
}

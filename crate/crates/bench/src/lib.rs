//! Fixtures shared by the criterion benchmarks.

use snapdemosaic::frame::FramePipeline;
use snapdemosaic::sensor::{build_synthetic_sensor, fit_calibration, SyntheticSensorParams};
use snapdemosaic::synth::{raw_frame, RawFrame};
use snapdemosaic::{CalibrationMatrix, SensorModel};

pub const FRAME_WIDTH: usize = 2048;
pub const FRAME_HEIGHT: usize = 1088;
pub const SEED: u64 = 0x5eed;

pub struct Fixture {
    pub sensor: SensorModel,
    pub calibration: CalibrationMatrix,
    pub frame: RawFrame,
}

impl Fixture {
    /// Default 4x4 synthetic sensor and a seeded raw frame.
    pub fn new(width: usize, height: usize) -> Self {
        let sensor =
            build_synthetic_sensor(&SyntheticSensorParams::default()).expect("default sensor");
        let calibration = fit_calibration(&sensor, sensor.grid())
            .expect("calibration")
            .matrix;
        let frame = raw_frame(width, height, sensor.pattern(), SEED).expect("frame");
        Fixture {
            sensor,
            calibration,
            frame,
        }
    }

    pub fn pipeline(&self) -> FramePipeline {
        FramePipeline::new(
            &self.sensor,
            &self.calibration,
            &self.frame.white,
            &self.frame.dark,
        )
        .expect("pipeline")
    }
}

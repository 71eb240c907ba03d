mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Snapshot mosaic hyperspectral toolkit.
#[derive(Debug, Parser)]
#[command(name = "snapdemosaic", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate acquisition of a high-resolution cube: writes
    /// PREFIX.mosaic, PREFIX.intermediate.cube, PREFIX.ideal.cube and
    /// PREFIX.calib.
    Simulate {
        #[arg(long)]
        cube: PathBuf,
        #[arg(long)]
        sensor: PathBuf,
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
    },
    /// Bilinear demosaic (or a refined cube) followed by spectral correction.
    Demosaic {
        #[arg(long)]
        mosaic: PathBuf,
        #[arg(long)]
        sensor: PathBuf,
        #[arg(long)]
        calib: PathBuf,
        /// Full-resolution cube with the measured bands, used instead of
        /// bilinear interpolation.
        #[arg(long)]
        refined: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a reflectance cube to an sRGB PNG under D65. The unquantised
    /// image is written next to it as OUT with extension `.rgb.cube`.
    Rgb {
        #[arg(long)]
        cube: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Oxygen saturation map as a grey + alpha PNG (transparent = invalid).
    Oxy {
        #[arg(long)]
        cube: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// L1, PSNR and SSIM of predictions against references: writes
    /// PREFIX.csv and PREFIX.txt. Directories are paired by file name.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long = "ref")]
        reference: PathBuf,
        /// Compare sRGB renderings instead of the spectral cubes.
        #[arg(long)]
        rgb: bool,
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
    },
    /// Time the per-frame path on a seeded synthetic raw frame.
    Bench {
        #[arg(long, default_value_t = 2048)]
        width: usize,
        #[arg(long, default_value_t = 1088)]
        height: usize,
        #[arg(long, default_value_t = 20)]
        iters: usize,
        #[arg(long)]
        sensor: PathBuf,
    },
    /// Write a synthetic sensor model with Lorentzian bands and cross-talk.
    MakeSensor {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 470.0)]
        start: f64,
        #[arg(long, default_value_t = 620.0)]
        end: f64,
        #[arg(long, default_value_t = 15.0)]
        fwhm: f64,
        #[arg(long, default_value_t = 0.2)]
        leakage: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a seeded synthetic reflectance cube.
    MakeCube {
        #[arg(long, default_value_t = 64)]
        width: usize,
        #[arg(long, default_value_t = 64)]
        height: usize,
        #[arg(long, default_value_t = 470.0)]
        start: f64,
        #[arg(long, default_value_t = 620.0)]
        end: f64,
        #[arg(long, default_value_t = 2.0)]
        step: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Fill every sample with this value instead of a scene.
        #[arg(long, conflicts_with = "phantom")]
        constant: Option<f32>,
        /// Hemoglobin phantom with saturation rising from 0 (left) to 1
        /// (right) instead of a scene.
        #[arg(long)]
        phantom: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use snapdemosaic::colorimetry::{cube_to_srgb, oxygenation_map, ExtinctionTable};
use snapdemosaic::frame::{benchmark, FramePipeline};
use snapdemosaic::io;
use snapdemosaic::sensor::{build_synthetic_sensor, SyntheticSensorParams};
use snapdemosaic::synth::{self, SceneParams};
use snapdemosaic::{
    aggregate, demosaic_pipeline, evaluate, fit_calibration, simulate_ideal, simulate_spectral,
    subsample, Hypercube, QualityRecord, Wavelengths,
};

use crate::Command;

const BENCH_SEED: u64 = 0x5eed;

/// 3 for numeric failures, 2 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<snapdemosaic::Error>() {
        Some(e) if e.is_numeric() => 3,
        _ => 2,
    }
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Simulate { cube, sensor, out } => simulate(&cube, &sensor, &out),
        Command::Demosaic {
            mosaic,
            sensor,
            calib,
            refined,
            out,
        } => demosaic(&mosaic, &sensor, &calib, refined.as_deref(), &out),
        Command::Rgb { cube, out } => {
            let raw = out.with_extension("rgb.cube");
            if raw == cube {
                bail!("{} would overwrite the input cube", raw.display());
            }
            let rgb = cube_to_srgb(&io::read_cube(&cube)?)?;
            io::write_rgb_png(&rgb, &out)?;
            io::write_cube(&rgb.to_cube()?, raw)?;
            Ok(())
        }
        Command::Oxy { cube, out } => {
            let map = oxygenation_map(&io::read_cube(&cube)?, &ExtinctionTable::hemoglobin())?;
            io::write_oxy_png(&map, &out)?;
            println!("valid pixels: {:.1}%", 100.0 * map.valid_fraction());
            Ok(())
        }
        Command::Eval {
            pred,
            reference,
            rgb,
            out,
        } => eval(&pred, &reference, rgb, &out),
        Command::Bench {
            width,
            height,
            iters,
            sensor,
        } => bench(width, height, iters, &sensor),
        Command::MakeSensor {
            n,
            start,
            end,
            fwhm,
            leakage,
            out,
        } => {
            let sensor = build_synthetic_sensor(&SyntheticSensorParams {
                n,
                range: (start, end),
                fwhm,
                leakage,
            })?;
            io::write_sensor(&sensor, &out)?;
            Ok(())
        }
        Command::MakeCube {
            width,
            height,
            start,
            end,
            step,
            seed,
            constant,
            phantom,
            out,
        } => {
            let wavelengths = Wavelengths::stepped(start, end, step)?;
            let cube = match constant {
                Some(v) => Hypercube::filled(width, height, wavelengths, v)?,
                None if phantom => {
                    synth::oxygenation_phantom(
                        width,
                        height,
                        &wavelengths,
                        &ExtinctionTable::hemoglobin(),
                    )?
                    .0
                }
                None => {
                    synth::reflectance_scene(&SceneParams::new(width, height, seed), &wavelengths)?
                }
            };
            io::write_cube(&cube, &out)?;
            Ok(())
        }
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(prefix.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

fn simulate(cube: &Path, sensor: &Path, out: &Path) -> Result<()> {
    let hr = io::read_cube(cube)?;
    let sensor = io::read_sensor(sensor)?;
    let intermediate = simulate_spectral(&hr, &sensor)?;
    let ideal = simulate_ideal(&hr, &sensor)?;
    let mosaic = subsample(&intermediate, sensor.pattern())?;
    let calib = fit_calibration(&sensor, sensor.grid())?;
    io::write_mosaic(&mosaic, with_suffix(out, ".mosaic"))?;
    io::write_cube(&intermediate, with_suffix(out, ".intermediate.cube"))?;
    io::write_cube(&ideal, with_suffix(out, ".ideal.cube"))?;
    io::write_calibration(&calib, with_suffix(out, ".calib"))?;
    Ok(())
}

fn demosaic(
    mosaic: &Path,
    sensor: &Path,
    calib: &Path,
    refined: Option<&Path>,
    out: &Path,
) -> Result<()> {
    let mosaic = io::read_mosaic(mosaic)?;
    let sensor = io::read_sensor(sensor)?;
    let calib = io::read_calibration(calib)?;
    let refined = refined.map(io::read_cube).transpose()?;
    let cube = demosaic_pipeline(&mosaic, &sensor, &calib.matrix, refined.as_ref())?;
    io::write_cube(&cube, out)?;
    Ok(())
}

/// Prediction/reference file pairs: the two paths themselves, or the
/// `.cube` files two directories have in common by name.
fn eval_pairs(pred: &Path, reference: &Path) -> Result<Vec<(String, PathBuf, PathBuf)>> {
    if !pred.is_dir() && !reference.is_dir() {
        let name = pred
            .file_stem()
            .unwrap_or(pred.as_os_str())
            .to_string_lossy()
            .into_owned();
        return Ok(vec![(name, pred.to_path_buf(), reference.to_path_buf())]);
    }
    if !pred.is_dir() || !reference.is_dir() {
        bail!("--pred and --ref must both be files or both be directories");
    }
    let cubes = |dir: &Path| -> Result<Vec<String>> {
        let mut names = Vec::new();
        for entry in fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "cube") {
                names.push(path.file_name().unwrap().to_string_lossy().into_owned());
            }
        }
        names.sort();
        Ok(names)
    };
    let (p, r) = (cubes(pred)?, cubes(reference)?);
    if p != r {
        bail!(
            "{} and {} do not hold the same .cube file names",
            pred.display(),
            reference.display()
        );
    }
    if p.is_empty() {
        bail!("no .cube files in {}", pred.display());
    }
    Ok(p.into_iter()
        .map(|name| {
            let stem = name.trim_end_matches(".cube").to_string();
            (stem, pred.join(&name), reference.join(&name))
        })
        .collect())
}

fn eval(pred: &Path, reference: &Path, rgb: bool, out: &Path) -> Result<()> {
    let mut records: Vec<QualityRecord> = Vec::new();
    for (name, p, r) in eval_pairs(pred, reference)? {
        let (p, r) = (io::read_cube(&p)?, io::read_cube(&r)?);
        let record = if rgb {
            evaluate(&name, &cube_to_srgb(&p)?, &cube_to_srgb(&r)?)?
        } else {
            evaluate(&name, &p, &r)?
        };
        records.push(record);
    }
    let report = aggregate(&records)?;
    let write = |suffix: &str, text: String| -> Result<()> {
        let path = with_suffix(out, suffix);
        fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
    };
    write(".csv", report.to_csv())?;
    write(".txt", report.to_text())?;
    print!("{}", report.to_text());
    Ok(())
}

fn bench(width: usize, height: usize, iters: usize, sensor: &Path) -> Result<()> {
    let sensor = io::read_sensor(sensor)?;
    let calib = fit_calibration(&sensor, sensor.grid())?;
    let frame = synth::raw_frame(width, height, sensor.pattern(), BENCH_SEED)?;
    let mut pipeline = FramePipeline::new(&sensor, &calib.matrix, &frame.white, &frame.dark)?;
    // warm-up: first touch of the working buffers
    benchmark(&mut pipeline, frame.raw.data(), 1)?;
    let report = benchmark(&mut pipeline, frame.raw.data(), iters)?;
    print!("{}", report.to_text());
    Ok(())
}

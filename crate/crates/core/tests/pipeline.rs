use proptest::prelude::*;
use snapdemosaic::frame::FramePipeline;
use snapdemosaic::io;
use snapdemosaic::metrics::{psnr, ssim};
use snapdemosaic::sensor::{build_synthetic_sensor, SyntheticSensorParams};
use snapdemosaic::synth::{raw_frame, reflectance_scene, uniform_cube, SceneParams};
use snapdemosaic::{
    apply_correction, bilinear_demosaic, cube_to_srgb, demosaic_pipeline, evaluate,
    fit_calibration, simulate_ideal, simulate_spectral, subsample, Hypercube, MosaicImage,
    SensorModel,
};

fn sensor() -> SensorModel {
    build_synthetic_sensor(&SyntheticSensorParams::default()).unwrap()
}

fn combine(a: &Hypercube, b: &Hypercube, s: f32, t: f32) -> Hypercube {
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| s * x + t * y)
        .collect();
    Hypercube::new(a.width(), a.height(), a.wavelengths().clone(), data).unwrap()
}

fn max_diff(a: &[f32], b: &[f32]) -> f32 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f32::max)
}

#[test]
fn files_carry_the_whole_pipeline() {
    let s = sensor();
    let dir = tempfile::tempdir().unwrap();
    let hr = reflectance_scene(&SceneParams::new(48, 40, 3), s.grid()).unwrap();
    let mosaic = subsample(&simulate_spectral(&hr, &s).unwrap(), s.pattern()).unwrap();
    let calib = fit_calibration(&s, s.grid()).unwrap();

    io::write_sensor(&s, dir.path().join("s.sensor")).unwrap();
    io::write_mosaic(&mosaic, dir.path().join("m.mosaic")).unwrap();
    io::write_calibration(&calib, dir.path().join("c.calib")).unwrap();
    let s2 = io::read_sensor(dir.path().join("s.sensor")).unwrap();
    let m2 = io::read_mosaic(dir.path().join("m.mosaic")).unwrap();
    let c2 = io::read_calibration(dir.path().join("c.calib")).unwrap();

    let direct = demosaic_pipeline(&mosaic, &s, &calib.matrix, None).unwrap();
    let via_files = demosaic_pipeline(&m2, &s2, &c2.matrix, None).unwrap();
    assert_eq!(direct, via_files);

    let ideal = simulate_ideal(&hr, &s).unwrap();
    let record = evaluate("scene", &direct, &ideal).unwrap();
    assert!(record.psnr_db > 25.0, "{record:?}");
    assert!(record.ssim > 0.8, "{record:?}");
    let rgb = evaluate(
        "scene",
        &cube_to_srgb(&direct).unwrap(),
        &cube_to_srgb(&ideal).unwrap(),
    )
    .unwrap();
    assert!(rgb.psnr_db > 25.0, "{rgb:?}");
}

#[test]
fn frame_path_tracks_reference_on_flat_field() {
    // a raw frame equal to its white reference renders as white
    let s = sensor();
    let c = fit_calibration(&s, s.grid()).unwrap().matrix;
    let f = raw_frame(40, 24, s.pattern(), 2).unwrap();
    let mut pipeline = FramePipeline::new(&s, &c, &f.white, &f.dark).unwrap();
    let mut rgb = vec![0.0; 3 * 40 * 24];
    pipeline.process(f.white.data(), &mut rgb).unwrap();
    let flat = Hypercube::filled(40, 24, s.ideal_centers().unwrap(), 1.0).unwrap();
    let c_white = apply_correction(&flat, &c, &s.ideal_centers().unwrap()).unwrap();
    let expected = cube_to_srgb(&c_white).unwrap();
    assert!(max_diff(&rgb, expected.data()) < 1e-3);
}

#[test]
fn metrics_agree_on_scaled_error() {
    let wl = sensor().ideal_centers().unwrap();
    let a = uniform_cube(24, 24, &wl, 0.2, 0.8, 1).unwrap();
    let noise = uniform_cube(24, 24, &wl, -0.05, 0.05, 2).unwrap();
    let small = combine(&a, &noise, 1.0, 1.0);
    let large = combine(&a, &noise, 1.0, 2.0);
    assert!(psnr(&a, &small, 1.0).unwrap() > psnr(&a, &large, 1.0).unwrap());
    // doubling the error costs 20 log10(2) dB
    let gap = psnr(&a, &small, 1.0).unwrap() - psnr(&a, &large, 1.0).unwrap();
    assert!((gap - 20.0 * 2f64.log10()).abs() < 1e-3, "{gap}");
    assert!(ssim(&a, &small).unwrap() > ssim(&a, &large).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn demosaic_is_linear(seed in any::<u64>(), w in 8usize..30, h in 8usize..30, t in 0.1f32..3.0) {
        let s = sensor();
        let wl = s.measured_centers();
        let a = uniform_cube(w, h, wl, 0.0, 1.0, seed).unwrap();
        let b = uniform_cube(w, h, wl, 0.0, 1.0, seed ^ 1).unwrap();
        let d = |c: &Hypercube| bilinear_demosaic(&subsample(c, s.pattern()).unwrap(), wl).unwrap();
        let lhs = d(&combine(&a, &b, 1.0, t));
        let rhs = combine(&d(&a), &d(&b), 1.0, t);
        prop_assert!(max_diff(lhs.data(), rhs.data()) < 1e-5);
    }

    #[test]
    fn simulation_is_linear(seed in any::<u64>(), t in 0.1f32..0.9) {
        let s = sensor();
        let a = uniform_cube(6, 5, s.grid(), 0.0, 1.0, seed).unwrap();
        let b = uniform_cube(6, 5, s.grid(), 0.0, 1.0, seed ^ 1).unwrap();
        let mix = combine(&a, &b, 1.0 - t, t);
        for project in [simulate_spectral, simulate_ideal] {
            let lhs = project(&mix, &s).unwrap();
            let rhs = combine(&project(&a, &s).unwrap(), &project(&b, &s).unwrap(), 1.0 - t, t);
            prop_assert!(max_diff(lhs.data(), rhs.data()) < 1e-5);
        }
    }

    #[test]
    fn mosaic_keeps_one_sample_per_pixel(seed in any::<u64>(), w in 4usize..20, h in 4usize..20) {
        let s = sensor();
        let cube = uniform_cube(w, h, s.measured_centers(), 0.0, 1.0, seed).unwrap();
        let m: MosaicImage = subsample(&cube, s.pattern()).unwrap();
        for y in 0..h {
            for x in 0..w {
                prop_assert_eq!(m.get(x, y), cube.get(x, y, s.pattern().band_at_pixel(x, y)));
            }
        }
    }
}

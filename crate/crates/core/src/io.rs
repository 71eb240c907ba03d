//! Exchange file formats.
//!
//! Cube and mosaic files are a UTF-8 header of `key:value` lines, a blank
//! line, then little-endian `f32` samples:
//!
//! ```text
//! magic:HSICUBE1            magic:HSIMOSA1
//! width:<u32>               width:<u32>
//! height:<u32>              height:<u32>
//! bands:<u32>               bands:1
//! wavelengths:<f32,...>     pattern:<n>;<n² band indices, row-major>
//! <blank>                   <blank>
//! <payload>                 <payload>
//! ```
//!
//! Sensor models and calibration matrices are plain text (see
//! [`write_sensor`] and [`write_calibration`]).

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, ErrorKind, Write};
use std::path::Path;

use crate::colorimetry::{OxyMap, RgbImage};
use crate::cube::{Hypercube, Wavelengths};
use crate::error::{Error, Result};
use crate::mosaic::{MosaicImage, MosaicPattern};
use crate::sensor::{CalibrationFit, CalibrationMatrix, IdealBandSpec, SensorModel};
use crate::spectrum::ResponseCurve;

pub const CUBE_MAGIC: &str = "HSICUBE1";
pub const MOSAIC_MAGIC: &str = "HSIMOSA1";
pub const SENSOR_MAGIC: &str = "HSISENS1";
pub const CALIB_MAGIC: &str = "HSICALIB1";

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| match e.kind() {
        ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => Error::Io(e),
    })
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    let unwritable = |source| Error::Unwritable {
        path: path.to_path_buf(),
        source,
    };
    let file = fs::File::create(path).map_err(unwritable)?;
    let mut out = BufWriter::new(file);
    out.write_all(bytes).map_err(unwritable)?;
    out.flush().map_err(unwritable)
}

fn malformed(field: &'static str, reason: impl Into<String>) -> Error {
    Error::MalformedHeader {
        field,
        reason: reason.into(),
    }
}

/// Ordered `key:value` header fields with strict lookup.
struct Header<'a> {
    fields: Vec<(&'a str, &'a str)>,
}

impl<'a> Header<'a> {
    /// Splits `bytes` into header fields and the payload after the blank line.
    fn split(bytes: &'a [u8]) -> Result<(Self, &'a [u8])> {
        let end = bytes
            .windows(2)
            .position(|w| w == b"\n\n")
            .ok_or_else(|| malformed("header", "no blank line terminating the header"))?;
        let text =
            std::str::from_utf8(&bytes[..end]).map_err(|_| malformed("header", "not UTF-8"))?;
        let fields = text
            .lines()
            .map(|line| {
                line.split_once(':')
                    .ok_or_else(|| malformed("header", format!("line `{line}` has no `:`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Header { fields }, &bytes[end + 2..]))
    }

    fn parse_text(text: &'a str) -> Result<Self> {
        let fields = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_once(':')
                    .ok_or_else(|| malformed("header", format!("line `{line}` has no `:`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Header { fields })
    }

    fn get(&self, field: &'static str) -> Result<&'a str> {
        let mut found = self.fields.iter().filter(|(k, _)| *k == field);
        let value = found.next().ok_or_else(|| malformed(field, "missing"))?;
        if found.next().is_some() {
            return Err(malformed(field, "repeated"));
        }
        Ok(value.1.trim())
    }

    fn all(&self, field: &str) -> impl Iterator<Item = &'a str> + '_ {
        let field = field.to_string();
        self.fields
            .iter()
            .filter(move |(k, _)| *k == field)
            .map(|(_, v)| v.trim())
    }

    fn expect_magic(&self, magic: &str) -> Result<()> {
        let found = self.get("magic")?;
        if found != magic {
            return Err(malformed(
                "magic",
                format!("expected {magic}, found {found}"),
            ));
        }
        Ok(())
    }

    fn check_known(&self, known: &[&str]) -> Result<()> {
        match self.fields.iter().find(|(k, _)| !known.contains(k)) {
            Some((k, _)) => Err(malformed("header", format!("unknown field `{k}`"))),
            None => Ok(()),
        }
    }

    fn usize(&self, field: &'static str) -> Result<usize> {
        let v = self.get(field)?;
        v.parse::<u32>()
            .map(|v| v as usize)
            .map_err(|e| malformed(field, format!("`{v}`: {e}")))
    }
}

fn parse_list<T: std::str::FromStr>(field: &'static str, text: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<T>()
                .map_err(|e| malformed(field, format!("`{}`: {e}", v.trim())))
        })
        .collect()
}

fn join<T: std::fmt::Display>(values: impl IntoIterator<Item = T>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn decode_payload(payload: &[u8], expected: usize) -> Result<Vec<f32>> {
    if payload.len() != expected * 4 {
        return Err(Error::SizeMismatch {
            field: "payload",
            expected,
            found: payload.len() / 4,
        });
    }
    Ok(payload
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
        .collect())
}

fn encode_payload(header: String, data: &[f32]) -> Vec<u8> {
    let mut bytes = header.into_bytes();
    bytes.reserve(data.len() * 4);
    for v in data {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    bytes
}

fn parse_wavelengths(text: &str) -> Result<Vec<f64>> {
    Ok(parse_list::<f32>("wavelengths", text)?
        .into_iter()
        .map(f64::from)
        .collect())
}

/// Serialises a cube into the exchange format.
pub fn encode_cube(cube: &Hypercube) -> Vec<u8> {
    let header = format!(
        "magic:{CUBE_MAGIC}\nwidth:{}\nheight:{}\nbands:{}\nwavelengths:{}\n\n",
        cube.width(),
        cube.height(),
        cube.bands(),
        join(cube.wavelengths().values().iter().map(|&v| v as f32)),
    );
    encode_payload(header, cube.data())
}

pub fn decode_cube(bytes: &[u8]) -> Result<Hypercube> {
    let (header, payload) = Header::split(bytes)?;
    header.expect_magic(CUBE_MAGIC)?;
    header.check_known(&["magic", "width", "height", "bands", "wavelengths"])?;
    let width = header.usize("width")?;
    let height = header.usize("height")?;
    let bands = header.usize("bands")?;
    let wavelengths = parse_wavelengths(header.get("wavelengths")?)?;
    if wavelengths.len() != bands {
        return Err(Error::WavelengthCountMismatch {
            declared: bands,
            found: wavelengths.len(),
        });
    }
    let data = decode_payload(payload, width * height * bands)?;
    Hypercube::new(width, height, Wavelengths::new(wavelengths)?, data)
}

pub fn write_cube(cube: &Hypercube, path: impl AsRef<Path>) -> Result<()> {
    write_bytes(path.as_ref(), &encode_cube(cube))
}

pub fn read_cube(path: impl AsRef<Path>) -> Result<Hypercube> {
    decode_cube(&read_bytes(path.as_ref())?)
}

fn format_pattern(p: &MosaicPattern) -> String {
    format!("{};{}", p.n(), join(p.layout()))
}

fn parse_pattern(text: &str) -> Result<MosaicPattern> {
    let (n, layout) = text
        .split_once(';')
        .ok_or_else(|| malformed("pattern", "expected `<n>;<indices>`"))?;
    let n = n
        .trim()
        .parse::<usize>()
        .map_err(|e| malformed("pattern", e.to_string()))?;
    MosaicPattern::new(n, parse_list("pattern", layout)?)
        .map_err(|e| malformed("pattern", e.to_string()))
}

pub fn encode_mosaic(mosaic: &MosaicImage) -> Vec<u8> {
    let header = format!(
        "magic:{MOSAIC_MAGIC}\nwidth:{}\nheight:{}\nbands:1\npattern:{}\n\n",
        mosaic.width(),
        mosaic.height(),
        format_pattern(mosaic.pattern()),
    );
    encode_payload(header, mosaic.data())
}

pub fn decode_mosaic(bytes: &[u8]) -> Result<MosaicImage> {
    let (header, payload) = Header::split(bytes)?;
    header.expect_magic(MOSAIC_MAGIC)?;
    header.check_known(&["magic", "width", "height", "bands", "pattern"])?;
    let width = header.usize("width")?;
    let height = header.usize("height")?;
    if header.usize("bands")? != 1 {
        return Err(malformed("bands", "mosaic files carry exactly one band"));
    }
    let pattern = parse_pattern(header.get("pattern")?)?;
    let data = decode_payload(payload, width * height)?;
    MosaicImage::new(width, height, data, pattern)
}

pub fn write_mosaic(mosaic: &MosaicImage, path: impl AsRef<Path>) -> Result<()> {
    write_bytes(path.as_ref(), &encode_mosaic(mosaic))
}

pub fn read_mosaic(path: impl AsRef<Path>) -> Result<MosaicImage> {
    decode_mosaic(&read_bytes(path.as_ref())?)
}

/// Sensor model as text:
///
/// ```text
/// magic:HSISENS1
/// pattern:<n>;<band indices>
/// wavelengths:<shared response grid, nm>
/// centers:<n² band label wavelengths>
/// response:<band>:<samples>        (one line per band)
/// ideal:<lambda0>,<qe>,<fwhm>      (one line per ideal band)
/// ```
pub fn format_sensor(sensor: &SensorModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "magic:{SENSOR_MAGIC}");
    let _ = writeln!(out, "pattern:{}", format_pattern(sensor.pattern()));
    let _ = writeln!(out, "wavelengths:{}", join(sensor.grid().values()));
    let _ = writeln!(out, "centers:{}", join(sensor.measured_centers().values()));
    for (k, curve) in sensor.measured().iter().enumerate() {
        let _ = writeln!(out, "response:{k}:{}", join(curve.response()));
    }
    for spec in sensor.ideal() {
        let _ = writeln!(out, "ideal:{},{},{}", spec.lambda0, spec.qe, spec.fwhm);
    }
    out
}

pub fn parse_sensor(text: &str) -> Result<SensorModel> {
    let header = Header::parse_text(text)?;
    header.expect_magic(SENSOR_MAGIC)?;
    header.check_known(&[
        "magic",
        "pattern",
        "wavelengths",
        "centers",
        "response",
        "ideal",
    ])?;
    let pattern = parse_pattern(header.get("pattern")?)?;
    let grid = Wavelengths::new(parse_list("wavelengths", header.get("wavelengths")?)?)?;
    let centers = Wavelengths::new(parse_list("centers", header.get("centers")?)?)?;

    let mut responses: Vec<Option<Vec<f64>>> = vec![None; pattern.bands()];
    for line in header.all("response") {
        let (band, values) = line
            .split_once(':')
            .ok_or_else(|| malformed("response", "expected `<band>:<samples>`"))?;
        let band: usize = band
            .trim()
            .parse()
            .map_err(|_| malformed("response", format!("bad band `{band}`")))?;
        let slot = responses
            .get_mut(band)
            .ok_or_else(|| malformed("response", format!("band {band} out of range")))?;
        if slot.is_some() {
            return Err(malformed("response", format!("band {band} repeated")));
        }
        *slot = Some(parse_list("response", values)?);
    }
    let measured = responses
        .into_iter()
        .enumerate()
        .map(|(k, r)| {
            let r = r.ok_or_else(|| malformed("response", format!("band {k} missing")))?;
            ResponseCurve::new(grid.clone(), r)
        })
        .collect::<Result<Vec<_>>>()?;

    let ideal = header
        .all("ideal")
        .map(|line| {
            let v: Vec<f64> = parse_list("ideal", line)?;
            match v[..] {
                [l0, qe, fwhm] => IdealBandSpec::new(l0, qe, fwhm),
                _ => Err(malformed(
                    "ideal",
                    format!("expected lambda0,qe,fwhm, got `{line}`"),
                )),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SensorModel::new(pattern, centers, measured, ideal)
}

pub fn write_sensor(sensor: &SensorModel, path: impl AsRef<Path>) -> Result<()> {
    write_bytes(path.as_ref(), format_sensor(sensor).as_bytes())
}

pub fn read_sensor(path: impl AsRef<Path>) -> Result<SensorModel> {
    let bytes = read_bytes(path.as_ref())?;
    parse_sensor(std::str::from_utf8(&bytes).map_err(|_| malformed("header", "not UTF-8"))?)
}

/// Calibration as text: `magic:HSICALIB1`, `rows`, `cols`, `residual_rms`,
/// then one `row:` line per matrix row.
pub fn format_calibration(fit: &CalibrationFit) -> String {
    let m = &fit.matrix;
    let mut out = String::new();
    let _ = writeln!(out, "magic:{CALIB_MAGIC}");
    let _ = writeln!(out, "rows:{}", m.rows());
    let _ = writeln!(out, "cols:{}", m.cols());
    let _ = writeln!(out, "residual_rms:{}", fit.residual_rms);
    for r in 0..m.rows() {
        let _ = writeln!(out, "row:{}", join(m.row(r)));
    }
    out
}

pub fn parse_calibration(text: &str) -> Result<CalibrationFit> {
    let header = Header::parse_text(text)?;
    header.expect_magic(CALIB_MAGIC)?;
    header.check_known(&["magic", "rows", "cols", "residual_rms", "row"])?;
    let rows = header.usize("rows")?;
    let cols = header.usize("cols")?;
    let residual_rms = header
        .get("residual_rms")?
        .parse::<f64>()
        .map_err(|e| malformed("residual_rms", e.to_string()))?;
    let mut entries = Vec::with_capacity(rows * cols);
    let mut found = 0;
    for line in header.all("row") {
        let row: Vec<f64> = parse_list("row", line)?;
        if row.len() != cols {
            return Err(Error::SizeMismatch {
                field: "row",
                expected: cols,
                found: row.len(),
            });
        }
        entries.extend(row);
        found += 1;
    }
    if found != rows {
        return Err(Error::SizeMismatch {
            field: "rows",
            expected: rows,
            found,
        });
    }
    Ok(CalibrationFit {
        matrix: CalibrationMatrix::new(rows, cols, entries)?,
        residual_rms,
    })
}

pub fn write_calibration(fit: &CalibrationFit, path: impl AsRef<Path>) -> Result<()> {
    write_bytes(path.as_ref(), format_calibration(fit).as_bytes())
}

pub fn read_calibration(path: impl AsRef<Path>) -> Result<CalibrationFit> {
    let bytes = read_bytes(path.as_ref())?;
    parse_calibration(std::str::from_utf8(&bytes).map_err(|_| malformed("header", "not UTF-8"))?)
}

fn encode_png(
    width: usize,
    height: usize,
    color: png::ColorType,
    samples: &[u8],
) -> Result<Vec<u8>> {
    let mut bytes = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut bytes, width as u32, height as u32);
        encoder.set_color(color);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header()?;
        writer.write_image_data(samples)?;
        writer.finish()?;
    }
    Ok(bytes)
}

/// 8-bit RGB PNG, `round(255 v)` per channel.
pub fn write_rgb_png(image: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    let bytes = encode_png(
        image.width(),
        image.height(),
        png::ColorType::Rgb,
        &image.to_u8(),
    )?;
    write_bytes(path.as_ref(), &bytes)
}

/// 8-bit grey + alpha PNG: grey is `round(255 SO2)`, invalid pixels are
/// fully transparent.
pub fn write_oxy_png(map: &OxyMap, path: impl AsRef<Path>) -> Result<()> {
    let samples: Vec<u8> = map
        .values()
        .iter()
        .flat_map(|v| match v {
            Some(s) => [(255.0 * s).round() as u8, 255],
            None => [0, 0],
        })
        .collect();
    let bytes = encode_png(
        map.width(),
        map.height(),
        png::ColorType::GrayscaleAlpha,
        &samples,
    )?;
    write_bytes(path.as_ref(), &bytes)
}

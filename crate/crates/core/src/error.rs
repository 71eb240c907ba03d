use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("missing file: {}", .0.display())]
    MissingFile(PathBuf),

    #[error("cannot write {}: {source}", path.display())]
    Unwritable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed header field `{field}`: {reason}")]
    MalformedHeader { field: &'static str, reason: String },

    #[error(
        "wavelength count mismatch: header declares {declared} bands but lists {found} wavelengths"
    )]
    WavelengthCountMismatch { declared: usize, found: usize },

    #[error("size mismatch in `{field}`: expected {expected} values, found {found}")]
    SizeMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("non-increasing wavelengths at index {index}")]
    NonIncreasingWavelengths { index: usize },

    #[error("wavelength {value} nm at index {index} outside (200, 2500) nm")]
    WavelengthOutOfRange { index: usize, value: f64 },

    #[error("non-finite value in `{field}` at index {index}")]
    NonFinite { field: &'static str, index: usize },

    #[error("invalid value for `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no overlap between cube wavelengths and sensor response for band {band}")]
    NoOverlap { band: usize },

    #[error("empty ideal band list")]
    EmptyIdealBands,

    #[error("degenerate sensor responses (condition {condition:.3e})")]
    DegenerateResponses { condition: f64 },

    #[error("image {width}x{height} smaller than required {min_width}x{min_height}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min_width: usize,
        min_height: usize,
    },

    #[error("infinite PSNR: inputs are identical")]
    InfinitePsnr,

    #[error("too few usable bands: need {needed}, found {found}")]
    TooFewBands { needed: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("png encoding failed: {0}")]
    Png(#[from] png::EncodingError),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input or I/O).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::DegenerateResponses { .. } | Error::InfinitePsnr | Error::NoOverlap { .. }
        )
    }
}

use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("NonPositiveValue: {0} is not strictly positive")]
    NonPositiveValue(f64),

    #[error("NotFinite: {0} is not a finite number")]
    NotFinite(f64),

    #[error("InvalidMantissa: {0} is outside [1, 10)")]
    InvalidMantissa(f64),

    #[error("InvalidDomain: log domain requires 0 < vmin < vmax (got vmin={vmin}, vmax={vmax})")]
    InvalidDomain { vmin: f64, vmax: f64 },

    #[error("InvalidSpan: e_min ({e_min}) must be smaller than e_max ({e_max})")]
    InvalidSpan { e_min: i32, e_max: i32 },

    #[error("TooManyBands: {bands} exponent bands requested, at most {max} are supported")]
    TooManyBands { bands: usize, max: usize },

    #[error("InvalidHues: {0}")]
    InvalidHues(String),

    #[error("InvalidColormap: {0}")]
    InvalidColormap(String),

    #[error("InvalidRange: low ({low}) is larger than high ({high})")]
    InvalidRange { low: f64, high: f64 },

    #[error("ParseError: {path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("ParseError: {path}:{line}:{column}: {message}")]
    ParseField {
        path: PathBuf,
        line: u64,
        column: String,
        message: String,
    },

    #[error("UnsupportedFormat: {0}")]
    UnsupportedFormat(String),

    #[error("SchemaError: {0}")]
    Schema(String),

    #[error("NoValidRows: {0}")]
    NoValidRows(String),

    #[error("EmptyPlot: no unmasked data points to draw")]
    EmptyPlot,

    #[error("DomainMismatch: {0}")]
    DomainMismatch(String),

    #[error("InvalidRenderSpec: {0}")]
    InvalidRenderSpec(String),

    #[error("InvalidImage: {0}")]
    InvalidImage(String),

    #[error("IoError: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("ImageError: {0}")]
    Image(#[from] image::ImageError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

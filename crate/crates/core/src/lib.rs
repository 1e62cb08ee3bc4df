//! Order-of-magnitude colormaps (OMC) for data that spans many powers of ten.
//!
//! Every decade of the data gets its own hue, and the mantissa inside a decade
//! is encoded by a perceptually linear lightness ramp of that hue. The crate
//! covers the whole pipeline:
//!
//! - [`scinum`]: mantissa/exponent decomposition and log normalization
//! - [`color`]: sRGB, HSV and CIELAB conversions plus DeltaE metrics
//! - [`colormap`]: OMC / OMC smoothed-lightness construction, hue equalization,
//!   Viridis and Rainbow references, table import/export
//! - [`metrics`]: range-size metric and colormap diagnostics
//! - [`ingest`]: CSV time-height series with missing-value masking
//! - [`render`]: deterministic scatterplot and colorbar rasterization

pub mod color;
pub mod colormap;
mod error;
pub mod ingest;
pub mod metrics;
pub mod render;
pub mod scinum;
pub mod synth;

pub use error::{Error, Result};

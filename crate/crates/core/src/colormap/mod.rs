//! Order-of-magnitude colormaps, reference colormaps and flat tables.
//!
//! An [`OmcColormap`] assigns one hue per integer exponent. Inside a band the
//! mantissa drives a straight-line ramp in CIELAB at fixed hue angle and
//! chroma, so lightness is affine in the band position. The smoothed-lightness
//! variant flips every second ramp so consecutive bands meet at equal
//! lightness.

mod hues;
mod io;
mod reference;
mod viridis_data;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::color::{hue_distance, srgb_to_hsv, LabColor, RgbColor};
use crate::scinum::{decompose, power_of_ten, BandMode, LogDomain};
use crate::{Error, Result};

pub use hues::{
    default_initial_hues, equalize_hues, equalize_hues_on, min_pairwise_distance, min_separation,
    ramp_chroma, ramp_hue_drift, HueEqualization, HueWheel, RampGeometry, DEFAULT_MAX_HUE_DRIFT,
};
pub use io::{export_table, import_table, load_colormap, save_colormap, ColormapFile, TableFormat};
pub use reference::{rainbow_table, viridis_table};

/// Most exponent bands a single map may carry.
pub const MAX_BANDS: usize = 12;
/// Samples per band used by construction checks and diagnostics.
pub const RAMP_SAMPLES: usize = 64;
/// Minimum lightness contrast of one band ramp.
pub const MIN_RAMP_CONTRAST: f64 = 20.0;
/// Tolerance (degrees) between a band's anchor and the HSV hue of its ramp ends.
pub const HUE_FAMILY_TOLERANCE: f64 = 15.0;

/// The L* interval every band ramp spans.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LightnessRange {
    pub low: f64,
    pub high: f64,
}

impl Default for LightnessRange {
    fn default() -> Self {
        Self {
            low: 30.0,
            high: 90.0,
        }
    }
}

impl LightnessRange {
    pub fn new(low: f64, high: f64) -> Result<Self> {
        let r = Self { low, high };
        r.validate()?;
        Ok(r)
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.low + self.high)
    }

    fn validate(&self) -> Result<()> {
        let ok = (0.0..=100.0).contains(&self.low)
            && (0.0..=100.0).contains(&self.high)
            && self.high - self.low >= MIN_RAMP_CONTRAST;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidColormap(format!(
                "lightness range {}..{} must lie in [0, 100] with at least {MIN_RAMP_CONTRAST} L* of contrast",
                self.low, self.high
            )))
        }
    }
}

/// Lightness direction along increasing mantissa.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Ascending,
    Descending,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Ascending => Direction::Descending,
            Direction::Descending => Direction::Ascending,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Ascending => "asc",
            Direction::Descending => "desc",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Omc,
    OmcSl,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Omc => "omc",
            Variant::OmcSl => "omc_sl",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omc" => Ok(Variant::Omc),
            "omc_sl" | "omc-sl" | "omcsl" => Ok(Variant::OmcSl),
            other => Err(Error::UnsupportedFormat(format!(
                "unknown variant `{other}`"
            ))),
        }
    }
}

/// One decade of an OMC map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentBand {
    pub exponent: i32,
    /// HSV hue (degrees) of the ramp midpoint.
    pub hue_anchor: f64,
    /// Color at band position 0.
    pub ramp_start: LabColor,
    /// Color at band position 1.
    pub ramp_end: LabColor,
    pub direction: Direction,
}

impl ExponentBand {
    pub fn lab_at(&self, t: f64) -> LabColor {
        self.ramp_start.lerp(&self.ramp_end, t.clamp(0.0, 1.0))
    }

    pub fn color_at(&self, t: f64) -> RgbColor {
        self.lab_at(t).to_rgb().value
    }

    /// The same ramp traversed the other way.
    pub fn reversed(&self) -> Self {
        Self {
            ramp_start: self.ramp_end,
            ramp_end: self.ramp_start,
            direction: self.direction.flipped(),
            ..*self
        }
    }

    fn check(&self) -> Result<()> {
        let contrast = self.ramp_end.l - self.ramp_start.l;
        if contrast.abs() < MIN_RAMP_CONTRAST {
            return Err(Error::InvalidColormap(format!(
                "band {}: lightness contrast {contrast:.2} is below {MIN_RAMP_CONTRAST}",
                self.exponent
            )));
        }
        let expected = if contrast > 0.0 {
            Direction::Ascending
        } else {
            Direction::Descending
        };
        if expected != self.direction {
            return Err(Error::InvalidColormap(format!(
                "band {}: direction {:?} disagrees with its ramp",
                self.exponent, self.direction
            )));
        }
        for end in [self.ramp_start, self.ramp_end] {
            let h = srgb_to_hsv(end.to_rgb().value).h;
            if hue_distance(h, self.hue_anchor) > HUE_FAMILY_TOLERANCE {
                return Err(Error::InvalidColormap(format!(
                    "band {}: ramp end hue {h:.1}° is more than {HUE_FAMILY_TOLERANCE}° from anchor {:.1}°",
                    self.exponent, self.hue_anchor
                )));
            }
        }
        Ok(())
    }
}

/// Options for [`build_omc`] and [`build_omc_sl`].
#[derive(Debug, Clone, PartialEq)]
pub struct BuildOptions {
    pub lightness: LightnessRange,
    pub mode: BandMode,
    /// Direction of the first band (and of every band for plain OMC).
    pub first_direction: Direction,
    /// Starting hue anchors; [`default_initial_hues`] when `None`.
    pub initial_hues: Option<Vec<f64>>,
    /// Run [`equalize_hues`] on the starting anchors.
    pub equalize: bool,
    pub max_hue_drift: f64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            lightness: LightnessRange::default(),
            mode: BandMode::MantissaLinear,
            first_direction: Direction::Ascending,
            initial_hues: None,
            equalize: true,
            max_hue_drift: DEFAULT_MAX_HUE_DRIFT,
        }
    }
}

/// Result of a colormap value lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorLookup {
    pub color: RgbColor,
    /// The value fell outside the map's domain and was clamped.
    pub out_of_range: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OmcColormap {
    e_min: i32,
    e_max: i32,
    bands: Vec<ExponentBand>,
    variant: Variant,
    mode: BandMode,
    equalization: Option<HueEqualization>,
}

fn band_count(e_min: i32, e_max: i32) -> Result<usize> {
    if e_min >= e_max {
        return Err(Error::InvalidSpan { e_min, e_max });
    }
    let bands = (i64::from(e_max) - i64::from(e_min) + 1) as usize;
    if bands > MAX_BANDS {
        return Err(Error::TooManyBands {
            bands,
            max: MAX_BANDS,
        });
    }
    Ok(bands)
}

fn default_wheel() -> &'static HueWheel {
    static WHEEL: OnceLock<HueWheel> = OnceLock::new();
    WHEEL.get_or_init(|| {
        HueWheel::new(LightnessRange::default(), DEFAULT_MAX_HUE_DRIFT)
            .expect("default lightness template gives a monotone hue wheel")
    })
}

fn wheel_for(options: &BuildOptions) -> Result<HueWheel> {
    options.lightness.validate()?;
    if options.lightness == LightnessRange::default()
        && options.max_hue_drift == DEFAULT_MAX_HUE_DRIFT
    {
        Ok(default_wheel().clone())
    } else {
        HueWheel::new(options.lightness, options.max_hue_drift)
    }
}

/// Builds the plain OMC map: one hue per exponent, every ramp in the same
/// direction.
pub fn build_omc(e_min: i32, e_max: i32, options: &BuildOptions) -> Result<OmcColormap> {
    let n = band_count(e_min, e_max)?;
    let wheel = wheel_for(options)?;
    let initial = options
        .initial_hues
        .clone()
        .unwrap_or_else(|| default_initial_hues(n));
    let equalization = if options.equalize {
        Some(equalize_hues_on(&wheel, n, &initial)?)
    } else {
        hues::validate_hues(n, &initial)?;
        None
    };
    let anchors = equalization.as_ref().map_or(initial, |eq| eq.hues.clone());

    let bands = anchors
        .iter()
        .zip(e_min..=e_max)
        .map(|(&anchor, exponent)| {
            let (dark, light) = wheel.exact_geometry(anchor).endpoints(options.lightness);
            let band = ExponentBand {
                exponent,
                hue_anchor: crate::color::wrap_degrees(anchor),
                ramp_start: dark,
                ramp_end: light,
                direction: Direction::Ascending,
            };
            match options.first_direction {
                Direction::Ascending => band,
                Direction::Descending => band.reversed(),
            }
        })
        .collect();

    let mut cmap = OmcColormap::from_bands(e_min, e_max, bands, Variant::Omc, options.mode)?;
    cmap.equalization = equalization;
    Ok(cmap)
}

/// Builds the smoothed-lightness variant: the OMC ramps with every second
/// band reversed, starting from `options.first_direction`.
pub fn build_omc_sl(e_min: i32, e_max: i32, options: &BuildOptions) -> Result<OmcColormap> {
    let omc = build_omc(e_min, e_max, options)?;
    Ok(omc.to_smoothed_lightness())
}

impl OmcColormap {
    /// Assembles a map from explicit bands, checking every structural and
    /// per-band invariant.
    pub fn from_bands(
        e_min: i32,
        e_max: i32,
        bands: Vec<ExponentBand>,
        variant: Variant,
        mode: BandMode,
    ) -> Result<Self> {
        let n = band_count(e_min, e_max)?;
        if bands.len() != n {
            return Err(Error::InvalidColormap(format!(
                "expected {n} bands for exponents {e_min}..={e_max}, got {}",
                bands.len()
            )));
        }
        for (band, exponent) in bands.iter().zip(e_min..=e_max) {
            if band.exponent != exponent {
                return Err(Error::InvalidColormap(format!(
                    "band for exponent {exponent} is labelled {}",
                    band.exponent
                )));
            }
            band.check()?;
        }
        let directions_ok = match variant {
            Variant::Omc => bands.windows(2).all(|w| w[0].direction == w[1].direction),
            Variant::OmcSl => bands.windows(2).all(|w| w[0].direction != w[1].direction),
        };
        if !directions_ok {
            return Err(Error::InvalidColormap(format!(
                "band directions do not match variant {}",
                variant.as_str()
            )));
        }
        let anchors: Vec<f64> = bands.iter().map(|b| b.hue_anchor).collect();
        if min_pairwise_distance(&anchors) < min_separation(n) - 1e-9 {
            return Err(Error::InvalidColormap(format!(
                "hue anchors closer than {:.2}°",
                min_separation(n)
            )));
        }
        Ok(Self {
            e_min,
            e_max,
            bands,
            variant,
            mode,
            equalization: None,
        })
    }

    pub fn e_min(&self) -> i32 {
        self.e_min
    }

    pub fn e_max(&self) -> i32 {
        self.e_max
    }

    pub fn bands(&self) -> &[ExponentBand] {
        &self.bands
    }

    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn mode(&self) -> BandMode {
        self.mode
    }

    /// The optimizer run that produced the anchors, if any.
    pub fn equalization(&self) -> Option<&HueEqualization> {
        self.equalization.as_ref()
    }

    pub fn hue_anchors(&self) -> Vec<f64> {
        self.bands.iter().map(|b| b.hue_anchor).collect()
    }

    pub fn directions(&self) -> Vec<Direction> {
        self.bands.iter().map(|b| b.direction).collect()
    }

    /// `[10^e_min, 10^(e_max + 1)]`.
    pub fn domain(&self) -> LogDomain {
        LogDomain::decades(self.e_min, self.e_max).expect("band span is a valid domain")
    }

    pub fn band(&self, exponent: i32) -> Option<&ExponentBand> {
        let idx = exponent.checked_sub(self.e_min)?;
        self.bands.get(usize::try_from(idx).ok()?)
    }

    pub fn with_mode(mut self, mode: BandMode) -> Self {
        self.mode = mode;
        self
    }

    /// Every second band reversed, the first one kept.
    pub fn to_smoothed_lightness(&self) -> Self {
        let bands = self
            .bands
            .iter()
            .enumerate()
            .map(|(i, b)| if i % 2 == 1 { b.reversed() } else { *b })
            .collect();
        Self {
            bands,
            variant: Variant::OmcSl,
            ..self.clone()
        }
    }

    pub fn lookup(&self, v: f64) -> Result<ColorLookup> {
        let sv = decompose(v)?;
        let first = &self.bands[0];
        let last = &self.bands[self.bands.len() - 1];
        let (color, out_of_range) = if sv.exponent < self.e_min {
            (first.color_at(0.0), true)
        } else if sv.exponent > self.e_max {
            (last.color_at(1.0), true)
        } else {
            let band = &self.bands[(sv.exponent - self.e_min) as usize];
            (band.color_at(self.mode.position(sv.mantissa)), false)
        };
        Ok(ColorLookup {
            color,
            out_of_range,
        })
    }

    /// Value of the `i`-th of `n` log-equidistant samples spanning the domain.
    pub fn sample_value(&self, i: usize, n: usize) -> f64 {
        let span = self.bands.len() as f64;
        let x = f64::from(self.e_min) + span * i as f64 / (n - 1) as f64;
        if x.fract() == 0.0 {
            if let Some(p) = power_of_ten(x as i32) {
                return p;
            }
        }
        10f64.powf(x)
    }

    /// `n` stops at log-equidistant values from `10^e_min` up to
    /// `10^(e_max + 1)`; the last stop is the top of the last band.
    pub fn sample_table(&self, n: usize) -> Result<ColormapTable> {
        if n < 2 {
            return Err(Error::InvalidColormap(format!(
                "a table needs at least 2 stops, got {n}"
            )));
        }
        let stops = (0..n)
            .map(|i| self.lookup(self.sample_value(i, n)).map(|l| l.color))
            .collect::<Result<Vec<_>>>()?;
        ColormapTable::new(self.name(), stops, ScaleHint::Log)
    }

    pub fn name(&self) -> String {
        format!("{}({},{})", self.variant.as_str(), self.e_min, self.e_max)
    }
}

/// Free-function form of [`OmcColormap::lookup`].
pub fn lookup(cmap: &OmcColormap, v: f64) -> Result<ColorLookup> {
    cmap.lookup(v)
}

/// Free-function form of [`OmcColormap::sample_table`].
pub fn sample_table(cmap: &OmcColormap, n: usize) -> Result<ColormapTable> {
    cmap.sample_table(n)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleHint {
    #[default]
    Linear,
    Log,
}

/// A flat ordered list of sRGB stops.
#[derive(Debug, Clone, PartialEq)]
pub struct ColormapTable {
    name: String,
    stops: Vec<RgbColor>,
    scale_hint: ScaleHint,
}

impl ColormapTable {
    pub fn new(
        name: impl Into<String>,
        stops: Vec<RgbColor>,
        scale_hint: ScaleHint,
    ) -> Result<Self> {
        if stops.len() < 2 {
            return Err(Error::InvalidColormap(format!(
                "a table needs at least 2 stops, got {}",
                stops.len()
            )));
        }
        if let Some(bad) = stops.iter().find(|c| !c.in_range()) {
            return Err(Error::InvalidColormap(format!(
                "stop {bad:?} has a channel outside [0, 1]"
            )));
        }
        Ok(Self {
            name: name.into(),
            stops,
            scale_hint,
        })
    }

    pub fn from_u8(
        name: impl Into<String>,
        stops: &[[u8; 3]],
        scale_hint: ScaleHint,
    ) -> Result<Self> {
        Self::new(
            name,
            stops.iter().copied().map(RgbColor::from_u8).collect(),
            scale_hint,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn stops(&self) -> &[RgbColor] {
        &self.stops
    }

    pub fn len(&self) -> usize {
        self.stops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stops.is_empty()
    }

    pub fn scale_hint(&self) -> ScaleHint {
        self.scale_hint
    }

    pub fn to_u8(&self) -> Vec<[u8; 3]> {
        self.stops.iter().map(RgbColor::to_u8).collect()
    }

    /// Stops rounded to 8 bits, as they would come back from a file.
    pub fn quantized(&self) -> Self {
        Self {
            stops: self
                .stops
                .iter()
                .map(|c| RgbColor::from_u8(c.to_u8()))
                .collect(),
            ..self.clone()
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            stops: self.stops.iter().rev().copied().collect(),
            ..self.clone()
        }
    }

    /// Index of the stop nearest to position `t` in `[0, 1]`.
    pub fn index_at(&self, t: f64) -> usize {
        let last = self.stops.len() - 1;
        ((t.clamp(0.0, 1.0) * last as f64).round() as usize).min(last)
    }

    pub fn color_at(&self, t: f64) -> RgbColor {
        self.stops[self.index_at(t)]
    }

    /// Nearest stop for `v` on a log scale over `domain`.
    pub fn lookup(&self, v: f64, domain: &LogDomain) -> Result<ColorLookup> {
        let pos = domain.normalize(v)?;
        Ok(ColorLookup {
            color: self.color_at(pos.t),
            out_of_range: pos.out_of_range,
        })
    }
}

/// Either kind of colormap the renderer and CLI accept.
#[derive(Debug, Clone, PartialEq)]
pub enum Colormap {
    Omc(OmcColormap),
    Table(ColormapTable),
}

impl Colormap {
    pub fn name(&self) -> String {
        match self {
            Colormap::Omc(c) => c.name(),
            Colormap::Table(t) => t.name().to_string(),
        }
    }

    pub fn as_omc(&self) -> Option<&OmcColormap> {
        match self {
            Colormap::Omc(c) => Some(c),
            Colormap::Table(_) => None,
        }
    }

    /// A table view; OMC maps are sampled with `samples_per_band` stops per band.
    pub fn to_table(&self, samples_per_band: usize) -> Result<ColormapTable> {
        match self {
            Colormap::Omc(c) => c.sample_table(samples_per_band * c.band_count()),
            Colormap::Table(t) => Ok(t.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_span() -> OmcColormap {
        build_omc(-8, -2, &BuildOptions::default()).unwrap()
    }

    #[test]
    fn span_validation() {
        let o = BuildOptions::default();
        assert!(matches!(
            build_omc(0, 0, &o),
            Err(Error::InvalidSpan { .. })
        ));
        assert!(matches!(
            build_omc(3, 1, &o),
            Err(Error::InvalidSpan { .. })
        ));
        assert!(matches!(
            build_omc(0, 12, &o),
            Err(Error::TooManyBands { bands: 13, .. })
        ));
        assert!(build_omc(0, 11, &o).is_ok());
    }

    #[test]
    fn paper_span_has_seven_ascending_bands() {
        let c = paper_span();
        assert_eq!(c.band_count(), 7);
        let exps: Vec<i32> = c.bands().iter().map(|b| b.exponent).collect();
        assert_eq!(exps, (-8..=-2).collect::<Vec<_>>());
        assert!(c.directions().iter().all(|d| *d == Direction::Ascending));
        assert_eq!(c.variant(), Variant::Omc);
    }

    #[test]
    fn minimal_span() {
        let c = build_omc(0, 1, &BuildOptions::default()).unwrap();
        assert_eq!(c.band_count(), 2);
        assert!(c.directions().iter().all(|d| *d == Direction::Ascending));
        assert!(hue_distance(c.bands()[0].hue_anchor, c.bands()[1].hue_anchor) > 1.0);

        let sl = build_omc_sl(0, 1, &BuildOptions::default()).unwrap();
        assert_eq!(
            sl.directions(),
            vec![Direction::Ascending, Direction::Descending]
        );
    }

    #[test]
    fn smoothed_lightness_alternates() {
        let sl = build_omc_sl(-8, -2, &BuildOptions::default()).unwrap();
        use Direction::*;
        assert_eq!(
            sl.directions(),
            vec![Ascending, Descending, Ascending, Descending, Ascending, Descending, Ascending]
        );
        assert_eq!(sl.variant(), Variant::OmcSl);
        let omc = paper_span();
        assert_eq!(sl.hue_anchors(), omc.hue_anchors());
    }

    #[test]
    fn lookup_edges() {
        let c = paper_span();
        let first = c.lookup(1e-8).unwrap();
        assert_eq!(first.color, c.bands()[0].color_at(0.0));
        assert!(!first.out_of_range);

        let mid = c.lookup(5.5e-4).unwrap();
        assert_eq!(mid.color, c.band(-4).unwrap().color_at(0.5));

        let above = c.lookup(1.0).unwrap();
        assert!(above.out_of_range);
        assert_eq!(above.color, c.bands()[6].color_at(1.0));

        let below = c.lookup(1e-12).unwrap();
        assert!(below.out_of_range);
        assert_eq!(below.color, first.color);

        assert!(matches!(c.lookup(-3.0), Err(Error::NonPositiveValue(_))));
        assert!(matches!(c.lookup(0.0), Err(Error::NonPositiveValue(_))));
    }

    #[test]
    fn two_stop_table_spans_the_map() {
        let c = paper_span();
        let t = c.sample_table(2).unwrap();
        assert_eq!(t.stops()[0], c.bands()[0].color_at(0.0));
        assert_eq!(t.stops()[1], c.bands()[6].color_at(1.0));
        assert!(c.sample_table(1).is_err());
    }

    #[test]
    fn sample_values_hit_decade_edges() {
        let c = paper_span();
        let n = 64 * 7 + 1;
        assert_eq!(c.sample_value(0, n), 1e-8);
        assert_eq!(c.sample_value(64, n), 1e-7);
        assert_eq!(c.sample_value(n - 1, n), 1e-1);
    }

    #[test]
    fn from_bands_rejects_broken_invariants() {
        let c = paper_span();
        let mut bands = c.bands().to_vec();
        bands[2].direction = Direction::Descending;
        assert!(
            OmcColormap::from_bands(-8, -2, bands, Variant::Omc, BandMode::MantissaLinear).is_err()
        );

        let mut bands = c.bands().to_vec();
        bands[3].ramp_end.l = bands[3].ramp_start.l + 5.0;
        assert!(
            OmcColormap::from_bands(-8, -2, bands, Variant::Omc, BandMode::MantissaLinear).is_err()
        );

        let mut bands = c.bands().to_vec();
        bands[1].hue_anchor += 40.0;
        assert!(
            OmcColormap::from_bands(-8, -2, bands, Variant::Omc, BandMode::MantissaLinear).is_err()
        );

        let bands = c.bands()[..6].to_vec();
        assert!(
            OmcColormap::from_bands(-8, -2, bands, Variant::Omc, BandMode::MantissaLinear).is_err()
        );

        let bands = c.bands().to_vec();
        assert!(
            OmcColormap::from_bands(-8, -2, bands, Variant::OmcSl, BandMode::MantissaLinear)
                .is_err()
        );
    }

    #[test]
    fn custom_hues_without_equalization() {
        let opts = BuildOptions {
            initial_hues: Some(vec![10.0, 130.0, 250.0]),
            equalize: false,
            ..BuildOptions::default()
        };
        let c = build_omc(0, 2, &opts).unwrap();
        assert_eq!(c.hue_anchors(), vec![10.0, 130.0, 250.0]);
        assert!(c.equalization().is_none());

        let bad = BuildOptions {
            initial_hues: Some(vec![10.0, 130.0]),
            ..BuildOptions::default()
        };
        assert!(matches!(build_omc(0, 2, &bad), Err(Error::InvalidHues(_))));
    }

    #[test]
    fn descending_plain_omc() {
        let opts = BuildOptions {
            first_direction: Direction::Descending,
            ..BuildOptions::default()
        };
        let c = build_omc(0, 2, &opts).unwrap();
        assert!(c.directions().iter().all(|d| *d == Direction::Descending));
        assert!(c.bands()[0].ramp_start.l > c.bands()[0].ramp_end.l);
    }

    #[test]
    fn table_validation() {
        assert!(ColormapTable::new("x", vec![RgbColor::WHITE], ScaleHint::Linear).is_err());
        assert!(ColormapTable::new(
            "x",
            vec![RgbColor::WHITE, RgbColor::new(1.5, 0.0, 0.0)],
            ScaleHint::Linear
        )
        .is_err());
        let t = ColormapTable::new(
            "x",
            vec![RgbColor::BLACK, RgbColor::WHITE],
            ScaleHint::Linear,
        )
        .unwrap();
        assert_eq!(t.color_at(0.2), RgbColor::BLACK);
        assert_eq!(t.color_at(0.7), RgbColor::WHITE);
        let d = LogDomain::new(1e-3, 1e-1).unwrap();
        let l = t.lookup(1e-4, &d).unwrap();
        assert!(l.out_of_range);
        assert_eq!(l.color, RgbColor::BLACK);
    }
}

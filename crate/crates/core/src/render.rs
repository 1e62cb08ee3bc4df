//! Raster output: time-height scatterplots and colorbar strips.
//!
//! Everything is integer-placed and unblended, so identical inputs give
//! identical pixels and identical PNG bytes.

use std::io::Write as _;
use std::path::Path;

use image::codecs::png::{CompressionType, FilterType, PngEncoder};
use image::{ImageEncoder, Rgb, RgbImage};

use crate::color::RgbColor;
use crate::colormap::{Colormap, OmcColormap};
use crate::ingest::TimeHeightSeries;
use crate::scinum::{decompose, power_of_ten, LogDomain};
use crate::{Error, Result};

/// Smallest accepted canvas side.
pub const MIN_CANVAS: u32 = 16;
/// Smallest accepted colorbar length (samples along the bar).
pub const MIN_COLORBAR_LENGTH: u32 = 256;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ColorbarPlacement {
    #[default]
    None,
    Right,
    Below,
}

impl ColorbarPlacement {
    pub fn as_str(&self) -> &'static str {
        match self {
            ColorbarPlacement::None => "none",
            ColorbarPlacement::Right => "right",
            ColorbarPlacement::Below => "below",
        }
    }
}

impl std::str::FromStr for ColorbarPlacement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(ColorbarPlacement::None),
            "right" => Ok(ColorbarPlacement::Right),
            "below" => Ok(ColorbarPlacement::Below),
            other => Err(Error::InvalidRenderSpec(format!(
                "unknown colorbar placement `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    /// Time axis in hours.
    pub x_range: (f64, f64),
    /// Height axis in kilometers.
    pub y_range: (f64, f64),
    pub point_size: u32,
    pub background: RgbColor,
    pub colorbar: ColorbarPlacement,
    /// Draw `10^e` labels under colorbar ticks.
    pub tick_labels: bool,
    /// Value domain for table colormaps; inferred from the data's whole
    /// decades when `None`. OMC maps always use their own decades.
    pub domain: Option<LogDomain>,
    /// Palette entries per decade for OMC maps.
    pub samples_per_decade: usize,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            width: 1291,
            height: 500,
            x_range: (0.0, 24.0),
            y_range: (0.0, 12.0),
            point_size: 3,
            background: RgbColor::WHITE,
            colorbar: ColorbarPlacement::None,
            tick_labels: false,
            domain: None,
            samples_per_decade: 256,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidRenderSpec(msg));
        if self.width < MIN_CANVAS || self.height < MIN_CANVAS {
            return bad(format!(
                "canvas {}x{} is smaller than {MIN_CANVAS}x{MIN_CANVAS}",
                self.width, self.height
            ));
        }
        if self.point_size == 0 {
            return bad("point size must be at least 1".into());
        }
        for (name, (lo, hi)) in [("x", self.x_range), ("y", self.y_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return bad(format!("{name} range [{lo}, {hi}] is empty or not finite"));
            }
        }
        if self.samples_per_decade < 2 {
            return bad("need at least 2 palette samples per decade".into());
        }
        if !self.background.in_range() {
            return bad("background color is outside [0, 1]".into());
        }
        Ok(())
    }
}

/// Maps values to 8-bit palette colors.
#[derive(Debug, Clone)]
pub struct ValueMapper {
    palette: Vec<[u8; 3]>,
    kind: MapperKind,
}

#[derive(Debug, Clone)]
enum MapperKind {
    Omc {
        domain: LogDomain,
        e_min: i32,
        e_max: i32,
        per_decade: usize,
    },
    Table {
        domain: LogDomain,
    },
}

impl ValueMapper {
    /// OMC maps are sampled at `per_decade` log-equidistant stops per band
    /// plus the top edge; tables are used as-is over `domain`.
    pub fn new(cmap: &Colormap, domain: Option<LogDomain>, per_decade: usize) -> Result<Self> {
        match cmap {
            Colormap::Omc(c) => Self::for_omc(c, per_decade),
            Colormap::Table(t) => {
                let domain = domain.ok_or_else(|| {
                    Error::InvalidRenderSpec("a table colormap needs a value domain".into())
                })?;
                Ok(Self {
                    palette: t.to_u8(),
                    kind: MapperKind::Table { domain },
                })
            }
        }
    }

    fn for_omc(c: &OmcColormap, per_decade: usize) -> Result<Self> {
        let n = per_decade * c.band_count() + 1;
        Ok(Self {
            palette: c.sample_table(n)?.to_u8(),
            kind: MapperKind::Omc {
                domain: c.domain(),
                e_min: c.e_min(),
                e_max: c.e_max(),
                per_decade,
            },
        })
    }

    /// Every color this mapper can produce.
    pub fn palette(&self) -> &[[u8; 3]] {
        &self.palette
    }

    pub fn domain(&self) -> LogDomain {
        match self.kind {
            MapperKind::Omc { domain, .. } | MapperKind::Table { domain } => domain,
        }
    }

    /// Palette index for `v` and whether `v` was outside the domain.
    pub fn index(&self, v: f64) -> Result<(usize, bool)> {
        let last = self.palette.len() - 1;
        let pos = self.domain().normalize(v)?;
        let nearest = ((pos.t * last as f64).round() as usize).min(last);
        match self.kind {
            MapperKind::Table { .. } => Ok((nearest, pos.out_of_range)),
            MapperKind::Omc {
                e_min,
                e_max,
                per_decade,
                ..
            } => {
                if pos.out_of_range {
                    return Ok((nearest, true));
                }
                // Keep the sample inside the value's own decade so rounding
                // never borrows the neighboring band's hue.
                let e = decompose(v)?.exponent.clamp(e_min, e_max);
                let first = (e - e_min) as usize * per_decade;
                Ok((nearest.clamp(first, first + per_decade - 1), false))
            }
        }
    }

    pub fn color(&self, v: f64) -> Result<[u8; 3]> {
        self.index(v).map(|(i, _)| self.palette[i])
    }
}

/// A rendered scatterplot with drawing statistics.
#[derive(Debug, Clone)]
pub struct ScatterRender {
    pub image: RgbImage,
    pub drawn: usize,
    /// Points drawn with a clamped color because they fell outside the domain.
    pub out_of_range: usize,
}

fn axis_pixel(x: f64, (lo, hi): (f64, f64), pixels: u32) -> i64 {
    ((x - lo) / (hi - lo) * f64::from(pixels - 1)).round() as i64
}

fn fill(img: &mut RgbImage, color: [u8; 3]) {
    for p in img.pixels_mut() {
        *p = Rgb(color);
    }
}

/// Domain a table colormap uses for `series` under `spec`.
pub fn data_domain(series: &TimeHeightSeries, spec: &RenderSpec) -> Result<LogDomain> {
    match spec.domain {
        Some(d) => Ok(d),
        None => {
            let (lo, hi) = series.observed_exponent_span()?;
            LogDomain::decades(lo, hi)
        }
    }
}

fn mapper_for(
    cmap: &Colormap,
    series: &TimeHeightSeries,
    spec: &RenderSpec,
) -> Result<ValueMapper> {
    let domain = match cmap {
        Colormap::Omc(_) => None,
        Colormap::Table(_) => Some(data_domain(series, spec)?),
    };
    ValueMapper::new(cmap, domain, spec.samples_per_decade)
}

/// Draws every unmasked point as a `point_size` square, in data order.
pub fn render_scatter_detailed(
    series: &TimeHeightSeries,
    cmap: &Colormap,
    spec: &RenderSpec,
) -> Result<ScatterRender> {
    spec.validate()?;
    if series.valid_count() == 0 {
        return Err(Error::EmptyPlot);
    }
    let mapper = mapper_for(cmap, series, spec)?;

    let (w, h) = (spec.width, spec.height);
    let mut image = RgbImage::new(w, h);
    fill(&mut image, spec.background.to_u8());

    let size = i64::from(spec.point_size);
    let (below, above) = ((size - 1) / 2, size / 2);
    let mut drawn = 0;
    let mut out_of_range = 0;
    for (t, z, v) in series.valid_points() {
        let (index, clamped) = mapper.index(v)?;
        drawn += 1;
        out_of_range += usize::from(clamped);
        let color = Rgb(mapper.palette()[index]);
        let px = axis_pixel(t, spec.x_range, w);
        let py = i64::from(h) - 1 - axis_pixel(z, spec.y_range, h);
        for y in (py - below).max(0)..=(py + above).min(i64::from(h) - 1) {
            for x in (px - below).max(0)..=(px + above).min(i64::from(w) - 1) {
                image.put_pixel(x as u32, y as u32, color);
            }
        }
    }
    if (spec.domain.is_some() || cmap.as_omc().is_some()) && out_of_range == drawn {
        let d = mapper.domain();
        let (lo, hi) = series.value_range();
        return Err(Error::DomainMismatch(format!(
            "no value in [{lo:e}, {hi:e}] lies inside the colormap domain [{:e}, {:e}]",
            d.vmin, d.vmax
        )));
    }

    let image = match spec.colorbar {
        ColorbarPlacement::None => image,
        placement => attach_colorbar(image, &mapper, cmap, spec, placement)?,
    };
    Ok(ScatterRender {
        image,
        drawn,
        out_of_range,
    })
}

pub fn render_scatter(
    series: &TimeHeightSeries,
    cmap: &Colormap,
    spec: &RenderSpec,
) -> Result<RgbImage> {
    render_scatter_detailed(series, cmap, spec).map(|r| r.image)
}

const BAR_GAP: u32 = 8;

fn attach_colorbar(
    plot: RgbImage,
    mapper: &ValueMapper,
    cmap: &Colormap,
    spec: &RenderSpec,
    placement: ColorbarPlacement,
) -> Result<RgbImage> {
    let (orientation, length) = match placement {
        ColorbarPlacement::Right => (Orientation::Vertical, plot.height()),
        _ => (Orientation::Horizontal, plot.width()),
    };
    let bar_spec = ColorbarSpec {
        orientation,
        length: length.max(MIN_COLORBAR_LENGTH),
        labels: spec.tick_labels,
        domain: Some(mapper.domain()),
        background: spec.background,
        ..ColorbarSpec::default()
    };
    let bar = render_colorbar(cmap, &bar_spec)?;
    let (w, h) = match placement {
        ColorbarPlacement::Right => (
            plot.width() + BAR_GAP + bar.width(),
            plot.height().max(bar.height()),
        ),
        _ => (
            plot.width().max(bar.width()),
            plot.height() + BAR_GAP + bar.height(),
        ),
    };
    let mut out = RgbImage::new(w, h);
    fill(&mut out, spec.background.to_u8());
    image::imageops::replace(&mut out, &plot, 0, 0);
    match placement {
        ColorbarPlacement::Right => {
            image::imageops::replace(&mut out, &bar, i64::from(plot.width() + BAR_GAP), 0)
        }
        _ => image::imageops::replace(&mut out, &bar, 0, i64::from(plot.height() + BAR_GAP)),
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Orientation {
    #[default]
    Horizontal,
    /// Low values at the bottom.
    Vertical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColorbarSpec {
    pub orientation: Orientation,
    /// Samples along the bar, at least [`MIN_COLORBAR_LENGTH`].
    pub length: u32,
    pub thickness: u32,
    pub tick_length: u32,
    pub labels: bool,
    /// Value domain for tick placement on table colormaps; OMC maps use
    /// their own decades. Without a domain a table bar has no ticks.
    pub domain: Option<LogDomain>,
    pub background: RgbColor,
}

impl Default for ColorbarSpec {
    fn default() -> Self {
        Self {
            orientation: Orientation::Horizontal,
            length: 512,
            thickness: 24,
            tick_length: 6,
            labels: false,
            domain: None,
            background: RgbColor::WHITE,
        }
    }
}

const TICK_COLOR: [u8; 3] = [0, 0, 0];

/// Exponents of the powers of ten inside `domain` with their positions in
/// `[0, 1]`.
pub fn decade_ticks(domain: &LogDomain) -> Vec<(i32, f64)> {
    let lo = domain.vmin.log10().floor() as i32 - 1;
    let hi = domain.vmax.log10().ceil() as i32 + 1;
    (lo..=hi)
        .filter_map(|e| {
            let p = power_of_ten(e)?;
            (p >= domain.vmin && p <= domain.vmax)
                .then(|| (e, domain.normalize(p).map(|pos| pos.t).unwrap_or(0.0)))
        })
        .collect()
}

/// Exponent and pixel offset of a decade tick.
type Tick = (i32, u32);

/// Colors of a bar with `length` samples and the tick positions along it.
fn bar_samples(cmap: &Colormap, spec: &ColorbarSpec) -> Result<(Vec<[u8; 3]>, Vec<Tick>)> {
    let n = spec.length as usize;
    let (colors, domain) = match cmap {
        Colormap::Omc(c) => (c.sample_table(n)?.to_u8(), Some(c.domain())),
        Colormap::Table(t) => {
            let last = (n - 1) as f64;
            let colors = (0..n)
                .map(|i| t.color_at(i as f64 / last).to_u8())
                .collect();
            (colors, spec.domain)
        }
    };
    let ticks = domain
        .map(|d| {
            decade_ticks(&d)
                .into_iter()
                .map(|(e, t)| (e, (t * (n - 1) as f64).round() as u32))
                .collect()
        })
        .unwrap_or_default();
    Ok((colors, ticks))
}

/// A strip sampling the colormap at `length` log-equidistant positions, with
/// black rule marks at exact powers of ten.
pub fn render_colorbar(cmap: &Colormap, spec: &ColorbarSpec) -> Result<RgbImage> {
    if spec.length < MIN_COLORBAR_LENGTH || spec.thickness == 0 {
        return Err(Error::InvalidRenderSpec(format!(
            "colorbar needs length >= {MIN_COLORBAR_LENGTH} and thickness >= 1, got {}x{}",
            spec.length, spec.thickness
        )));
    }
    let (colors, ticks) = bar_samples(cmap, spec)?;
    let label_band = if spec.labels { LABEL_HEIGHT + 2 } else { 0 };
    let across = spec.thickness + spec.tick_length + label_band;
    let (w, h) = match spec.orientation {
        Orientation::Horizontal => (spec.length, across),
        Orientation::Vertical => (across + label_width_budget(spec), spec.length),
    };
    let mut img = RgbImage::new(w, h);
    fill(&mut img, spec.background.to_u8());

    // (along, across) -> pixel
    let put = |img: &mut RgbImage, along: u32, across: u32, c: [u8; 3]| {
        let (x, y) = match spec.orientation {
            Orientation::Horizontal => (along, across),
            Orientation::Vertical => (across, spec.length - 1 - along),
        };
        if x < img.width() && y < img.height() {
            img.put_pixel(x, y, Rgb(c));
        }
    };
    for (i, &c) in colors.iter().enumerate() {
        for a in 0..spec.thickness {
            put(&mut img, i as u32, a, c);
        }
    }
    for &(_, pos) in &ticks {
        for a in spec.thickness..spec.thickness + spec.tick_length {
            put(&mut img, pos, a, TICK_COLOR);
        }
    }
    if spec.labels {
        let offset = spec.thickness + spec.tick_length + 2;
        for &(e, pos) in &ticks {
            let glyphs = label_glyphs(e);
            match spec.orientation {
                Orientation::Horizontal => {
                    let width = glyph_run_width(&glyphs) as i64;
                    let x0 = i64::from(pos) - width / 2;
                    draw_label(&mut img, &glyphs, x0, i64::from(offset));
                }
                Orientation::Vertical => {
                    let y0 = i64::from(spec.length - 1 - pos) - i64::from(LABEL_HEIGHT) / 2;
                    draw_label(&mut img, &glyphs, i64::from(offset), y0);
                }
            }
        }
    }
    Ok(img)
}

// Minimal 3x5 bitmap digits for `10^e` labels; each row is three bits, MSB left.
const GLYPH_W: u32 = 3;
const GLYPH_H: u32 = 5;
const RAISE: u32 = 3;
const LABEL_HEIGHT: u32 = GLYPH_H + RAISE;

const DIGITS: [[u8; 5]; 10] = [
    [0b111, 0b101, 0b101, 0b101, 0b111],
    [0b010, 0b110, 0b010, 0b010, 0b111],
    [0b111, 0b001, 0b111, 0b100, 0b111],
    [0b111, 0b001, 0b111, 0b001, 0b111],
    [0b101, 0b101, 0b111, 0b001, 0b001],
    [0b111, 0b100, 0b111, 0b001, 0b111],
    [0b111, 0b100, 0b111, 0b101, 0b111],
    [0b111, 0b001, 0b010, 0b010, 0b010],
    [0b111, 0b101, 0b111, 0b101, 0b111],
    [0b111, 0b101, 0b111, 0b001, 0b111],
];
const MINUS: [u8; 5] = [0b000, 0b000, 0b111, 0b000, 0b000];

/// Glyph rows and whether each glyph is raised (the exponent).
fn label_glyphs(e: i32) -> Vec<([u8; 5], bool)> {
    let mut out = vec![(DIGITS[1], false), (DIGITS[0], false)];
    for ch in e.to_string().chars() {
        let g = match ch {
            '-' => MINUS,
            d => DIGITS[d.to_digit(10).expect("exponent digits") as usize],
        };
        out.push((g, true));
    }
    out
}

fn glyph_run_width(glyphs: &[([u8; 5], bool)]) -> u32 {
    glyphs.len() as u32 * (GLYPH_W + 1) - 1
}

fn label_width_budget(spec: &ColorbarSpec) -> u32 {
    if spec.labels {
        2 + glyph_run_width(&label_glyphs(-300))
    } else {
        0
    }
}

fn draw_label(img: &mut RgbImage, glyphs: &[([u8; 5], bool)], x0: i64, y0: i64) {
    for (k, (rows, raised)) in glyphs.iter().enumerate() {
        let gx = x0 + k as i64 * i64::from(GLYPH_W + 1);
        let gy = y0 + if *raised { 0 } else { i64::from(RAISE) };
        for (r, bits) in rows.iter().enumerate() {
            for c in 0..GLYPH_W {
                if bits >> (GLYPH_W - 1 - c) & 1 == 1 {
                    let (x, y) = (gx + i64::from(c), gy + r as i64);
                    if x >= 0 && y >= 0 && (x as u32) < img.width() && (y as u32) < img.height() {
                        img.put_pixel(x as u32, y as u32, Rgb(TICK_COLOR));
                    }
                }
            }
        }
    }
}

/// PNG bytes of `image`: 8-bit RGB, no ancillary chunks.
pub fn encode_png(image: &RgbImage) -> Result<Vec<u8>> {
    if image.width() == 0 || image.height() == 0 {
        return Err(Error::InvalidImage(format!(
            "cannot encode a {}x{} image",
            image.width(),
            image.height()
        )));
    }
    let mut bytes = Vec::new();
    PngEncoder::new_with_quality(&mut bytes, CompressionType::Default, FilterType::Adaptive)
        .write_image(
            image.as_raw(),
            image.width(),
            image.height(),
            image::ExtendedColorType::Rgb8,
        )?;
    Ok(bytes)
}

/// Writes a PNG. The path must end in `.png`.
pub fn write_image(image: &RgbImage, path: &Path) -> Result<()> {
    let is_png = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png"));
    if !is_png {
        return Err(Error::UnsupportedFormat(format!(
            "images are written as PNG; `{}` does not end in .png",
            path.display()
        )));
    }
    let bytes = encode_png(image)?;
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(&bytes).map_err(|e| Error::io(path, e))
}

pub fn read_image(path: &Path) -> Result<RgbImage> {
    let img = image::open(path)?;
    Ok(img.to_rgb8())
}

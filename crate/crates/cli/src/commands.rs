use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use omc_core::color::DeltaE;
use omc_core::colormap::{
    build_omc, build_omc_sl, export_table, import_table, load_colormap, rainbow_table,
    save_colormap, viridis_table, BuildOptions, Colormap, ColormapTable, Direction, LightnessRange,
    OmcColormap, TableFormat, Variant, DEFAULT_MAX_HUE_DRIFT,
};
use omc_core::ingest::{parse_csv, ColumnSelector, CsvOptions};
use omc_core::metrics::{
    boundary_csv, boundary_report, delta_e_profile, hsv_profile, monotonicity_check,
    monotonicity_csv, range_size, summarize_boundaries, RangeAnswer,
};
use omc_core::render::{render_scatter_detailed, write_image, ColorbarPlacement, RenderSpec};
use omc_core::scinum::{BandMode, LogDomain};

use crate::error::CliError;

/// Exponent span used by the builtin OMC maps when none is given.
pub const DEFAULT_SPAN: (i32, i32) = (-8, -2);
/// Stops per band when an OMC map is sampled into a table.
pub const DEFAULT_SAMPLES_PER_BAND: usize = 64;
/// Stops of the builtin rainbow table.
pub const RAINBOW_STOPS: usize = 256;

type CmdResult = Result<String, CliError>;

fn dry_run<T: Serialize>(section: &str, settings: &T) -> CmdResult {
    let body = toml::to_string(settings)
        .map_err(|e| CliError::Config(format!("cannot print settings: {e}")))?;
    Ok(format!("[{section}]\n{body}"))
}

fn required<T: Clone>(value: &Option<T>, flag: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::Usage(format!("missing required option `{flag}`")))
}

fn parse_enum<T: std::str::FromStr>(value: &str, flag: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value `{value}` for `{flag}`")))
}

fn parse_direction(value: &str) -> Result<Direction, CliError> {
    match value {
        "asc" | "ascending" => Ok(Direction::Ascending),
        "desc" | "descending" => Ok(Direction::Descending),
        other => Err(CliError::Usage(format!(
            "invalid value `{other}` for `--first-direction` (asc or desc)"
        ))),
    }
}

fn span_of(emin: Option<i32>, emax: Option<i32>) -> Result<Option<(i32, i32)>, CliError> {
    match (emin, emax) {
        (Some(a), Some(b)) => Ok(Some((a, b))),
        (None, None) => Ok(None),
        _ => Err(CliError::Config(
            "`--emin` and `--emax` must be given together".into(),
        )),
    }
}

fn explicit_domain(lo: Option<f64>, hi: Option<f64>) -> Result<Option<LogDomain>, CliError> {
    match (lo, hi) {
        (Some(a), Some(b)) => Ok(Some(LogDomain::new(a, b)?)),
        (None, None) => Ok(None),
        _ => Err(CliError::Config(
            "`--domain-min` and `--domain-max` must be given together".into(),
        )),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A colormap named on the command line: builtin or file.
enum Source {
    Builtin(Variant),
    Viridis,
    Rainbow,
    File(PathBuf),
}

impl Source {
    fn parse(name: &str) -> Self {
        match name {
            "omc" => Source::Builtin(Variant::Omc),
            "omc_sl" | "omc-sl" => Source::Builtin(Variant::OmcSl),
            "viridis" => Source::Viridis,
            "rainbow" => Source::Rainbow,
            path => Source::File(PathBuf::from(path)),
        }
    }

    /// Loads the map. `span` applies to builtin OMC maps only; `None` falls
    /// back to `default_span`.
    fn load(
        &self,
        span: Option<(i32, i32)>,
        default_span: (i32, i32),
    ) -> Result<Colormap, CliError> {
        Ok(match self {
            Source::Builtin(variant) => {
                let (lo, hi) = span.unwrap_or(default_span);
                let opts = BuildOptions::default();
                Colormap::Omc(match variant {
                    Variant::Omc => build_omc(lo, hi, &opts)?,
                    Variant::OmcSl => build_omc_sl(lo, hi, &opts)?,
                })
            }
            Source::Viridis => Colormap::Table(viridis_table()),
            Source::Rainbow => Colormap::Table(rainbow_table(RAINBOW_STOPS)?),
            Source::File(p) => load_colormap(p)?,
        })
    }

    fn is_builtin_omc(&self) -> bool {
        matches!(self, Source::Builtin(_))
    }
}

fn reject_span_for_loaded_omc(
    cmap: &Colormap,
    span: Option<(i32, i32)>,
    source: &Source,
) -> Result<(), CliError> {
    if span.is_some() && cmap.as_omc().is_some() && !source.is_builtin_omc() {
        return Err(CliError::Config(
            "`--emin`/`--emax` cannot override the span stored in an OMC colormap file".into(),
        ));
    }
    Ok(())
}

/// Decade-aligned table view of a map: OMC maps get `per_band` stops per
/// band plus the top edge, so every band starts on a stop.
fn sampled_table(cmap: &Colormap, per_band: usize) -> Result<ColormapTable, CliError> {
    Ok(match cmap {
        Colormap::Omc(c) => c.sample_table(per_band * c.band_count() + 1)?,
        Colormap::Table(t) => t.clone(),
    })
}

fn boundary_line(cmap: &OmcColormap, metric: DeltaE) -> String {
    let report = boundary_report(cmap, metric);
    match summarize_boundaries(&report) {
        Some(s) => format!(
            "boundary {}: max {:.4} min {:.4} ratio {:.4} over {} boundaries\n",
            metric.as_str(),
            s.max,
            s.min,
            s.ratio,
            report.len()
        ),
        None => String::new(),
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| {
        CliError::Core(omc_core::Error::Io {
            path: path.to_path_buf(),
            source: e,
        })
    })
}

// ---------------------------------------------------------------- build

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct BuildArgs {
    /// Exponent of the first band [default: -8]
    #[arg(long)]
    pub emin: Option<i32>,
    /// Exponent of the last band [default: -2]
    #[arg(long)]
    pub emax: Option<i32>,
    /// omc or omc_sl [default: omc]
    #[arg(long)]
    pub variant: Option<String>,
    /// Position inside a decade: mantissa-linear or log-fraction [default: mantissa-linear]
    #[arg(long)]
    pub mode: Option<String>,
    /// Lightness direction of the first band: asc or desc [default: asc]
    #[arg(long)]
    pub first_direction: Option<String>,
    /// Darkest ramp L* [default: 30]
    #[arg(long)]
    pub lightness_low: Option<f64>,
    /// Lightest ramp L* [default: 90]
    #[arg(long)]
    pub lightness_high: Option<f64>,
    /// Comma-separated starting hue anchors in degrees
    #[arg(long, value_delimiter = ',')]
    pub hues: Option<Vec<f64>>,
    /// Keep the starting anchors instead of equalizing boundary distances
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub no_equalize: Option<bool>,
    /// Largest HSV hue drift allowed inside one ramp, in degrees [default: 10]
    #[arg(long)]
    pub max_hue_drift: Option<f64>,
    /// Output file (.cmap or .json)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
struct BuildSettings {
    emin: i32,
    emax: i32,
    variant: String,
    mode: String,
    first_direction: String,
    lightness_low: f64,
    lightness_high: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    hues: Option<Vec<f64>>,
    no_equalize: bool,
    max_hue_drift: f64,
    output: PathBuf,
}

impl BuildSettings {
    fn resolve(a: &BuildArgs) -> Result<Self, CliError> {
        let range = LightnessRange::default();
        let (emin, emax) = span_of(a.emin, a.emax)?.unwrap_or(DEFAULT_SPAN);
        Ok(Self {
            emin,
            emax,
            variant: a.variant.clone().unwrap_or_else(|| "omc".into()),
            mode: a
                .mode
                .clone()
                .unwrap_or_else(|| BandMode::default().as_str().into()),
            first_direction: a.first_direction.clone().unwrap_or_else(|| "asc".into()),
            lightness_low: a.lightness_low.unwrap_or(range.low),
            lightness_high: a.lightness_high.unwrap_or(range.high),
            hues: a.hues.clone(),
            no_equalize: a.no_equalize.unwrap_or(false),
            max_hue_drift: a.max_hue_drift.unwrap_or(DEFAULT_MAX_HUE_DRIFT),
            output: required(&a.output, "--output")?,
        })
    }
}

pub fn build(a: &BuildArgs, dry: bool) -> CmdResult {
    let s = BuildSettings::resolve(a)?;
    let variant: Variant = parse_enum(&s.variant, "--variant")?;
    let mode: BandMode = parse_enum(&s.mode, "--mode")?;
    let first_direction = parse_direction(&s.first_direction)?;
    if s.no_equalize && s.hues.is_none() {
        return Err(CliError::Config(
            "`--no-equalize` needs explicit `--hues`".into(),
        ));
    }
    if dry {
        return dry_run("build", &s);
    }
    let options = BuildOptions {
        lightness: LightnessRange::new(s.lightness_low, s.lightness_high)?,
        mode,
        first_direction,
        initial_hues: s.hues.clone(),
        equalize: !s.no_equalize,
        max_hue_drift: s.max_hue_drift,
    };
    let cmap = match variant {
        Variant::Omc => build_omc(s.emin, s.emax, &options)?,
        Variant::OmcSl => build_omc_sl(s.emin, s.emax, &options)?,
    };
    save_colormap(&Colormap::Omc(cmap.clone()), &s.output)?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "colormap {}: {} bands, {}",
        cmap.name(),
        cmap.band_count(),
        cmap.mode().as_str()
    );
    let dirs = cmap.directions();
    let alternating = dirs.windows(2).all(|w| w[0] != w[1]);
    let _ = writeln!(
        out,
        "directions: {}{}",
        join(dirs.iter().map(|d| d.as_str())),
        if alternating { " (alternating)" } else { "" }
    );
    let _ = writeln!(
        out,
        "hue anchors: {}",
        join(cmap.hue_anchors().iter().map(|h| format!("{h:.2}")))
    );
    out.push_str(&boundary_line(&cmap, DeltaE::De76));
    if let Some(eq) = cmap.equalization() {
        let _ = writeln!(
            out,
            "equalization: {} after {} sweeps, objective {:.4} -> {:.4}",
            if eq.converged {
                "converged"
            } else {
                "stopped (sweep limit)"
            },
            eq.sweeps,
            eq.initial_objective,
            eq.objective
        );
    }
    let _ = writeln!(out, "wrote {}", s.output.display());
    Ok(out)
}

// ---------------------------------------------------------------- render

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RenderArgs {
    /// Input CSV with time, height and value columns
    pub data: Option<PathBuf>,
    /// Colormap: omc, omc_sl, viridis, rainbow or a colormap file [default: omc]
    #[arg(long)]
    pub cmap: Option<String>,
    /// Output PNG
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// First exponent of a builtin OMC map or of a table's decade domain [default: from data]
    #[arg(long)]
    pub emin: Option<i32>,
    /// Last exponent of a builtin OMC map or of a table's decade domain [default: from data]
    #[arg(long)]
    pub emax: Option<i32>,
    /// Lower end of an explicit value domain for table colormaps
    #[arg(long)]
    pub domain_min: Option<f64>,
    /// Upper end of an explicit value domain for table colormaps
    #[arg(long)]
    pub domain_max: Option<f64>,
    /// Canvas width in pixels [default: 1291]
    #[arg(long)]
    pub width: Option<u32>,
    /// Canvas height in pixels [default: 500]
    #[arg(long)]
    pub height: Option<u32>,
    /// Side of each point square in pixels [default: 3]
    #[arg(long)]
    pub point_size: Option<u32>,
    /// Colorbar placement: none, right or below [default: none]
    #[arg(long)]
    pub colorbar: Option<String>,
    /// Label colorbar ticks with powers of ten
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub tick_labels: Option<bool>,
    /// Palette entries per decade for OMC maps [default: 256]
    #[arg(long)]
    pub samples_per_decade: Option<usize>,
    /// Field delimiter [default: ,]
    #[arg(long)]
    pub delimiter: Option<char>,
    /// Time column name or zero-based index [default: time]
    #[arg(long)]
    pub time_column: Option<String>,
    /// Height column name or zero-based index [default: height]
    #[arg(long)]
    pub height_column: Option<String>,
    /// Value column name or zero-based index [default: value]
    #[arg(long)]
    pub value_column: Option<String>,
    /// Comma-separated tokens that mark a missing field [default: "",NaN,nan,-999]
    #[arg(long, value_delimiter = ',')]
    pub missing_tokens: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
struct RenderSettings {
    data: PathBuf,
    cmap: String,
    output: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    emin: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    emax: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    domain_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    domain_max: Option<f64>,
    width: u32,
    height: u32,
    point_size: u32,
    colorbar: String,
    tick_labels: bool,
    samples_per_decade: usize,
    delimiter: char,
    time_column: String,
    height_column: String,
    value_column: String,
    missing_tokens: Vec<String>,
}

impl RenderSettings {
    fn resolve(a: &RenderArgs) -> Result<Self, CliError> {
        let spec = RenderSpec::default();
        let csv = CsvOptions::default();
        Ok(Self {
            data: required(&a.data, "DATA")?,
            cmap: a.cmap.clone().unwrap_or_else(|| "omc".into()),
            output: required(&a.output, "--output")?,
            emin: a.emin,
            emax: a.emax,
            domain_min: a.domain_min,
            domain_max: a.domain_max,
            width: a.width.unwrap_or(spec.width),
            height: a.height.unwrap_or(spec.height),
            point_size: a.point_size.unwrap_or(spec.point_size),
            colorbar: a
                .colorbar
                .clone()
                .unwrap_or_else(|| spec.colorbar.as_str().into()),
            tick_labels: a.tick_labels.unwrap_or(spec.tick_labels),
            samples_per_decade: a.samples_per_decade.unwrap_or(spec.samples_per_decade),
            delimiter: a.delimiter.unwrap_or(csv.delimiter as char),
            time_column: a.time_column.clone().unwrap_or_else(|| "time".into()),
            height_column: a.height_column.clone().unwrap_or_else(|| "height".into()),
            value_column: a.value_column.clone().unwrap_or_else(|| "value".into()),
            missing_tokens: a.missing_tokens.clone().unwrap_or(csv.missing_tokens),
        })
    }
}

pub fn render(a: &RenderArgs, dry: bool) -> CmdResult {
    let s = RenderSettings::resolve(a)?;
    let span = span_of(s.emin, s.emax)?;
    let domain = explicit_domain(s.domain_min, s.domain_max)?;
    if span.is_some() && domain.is_some() {
        return Err(CliError::Config(
            "give either `--emin`/`--emax` or `--domain-min`/`--domain-max`, not both".into(),
        ));
    }
    let source = Source::parse(&s.cmap);
    if domain.is_some() && matches!(source, Source::Builtin(_)) {
        return Err(CliError::Config(
            "`--domain-min`/`--domain-max` apply to table colormaps; OMC maps use their decades"
                .into(),
        ));
    }
    let colorbar: ColorbarPlacement = parse_enum(&s.colorbar, "--colorbar")?;
    if !s.delimiter.is_ascii() {
        return Err(CliError::Usage(
            "`--delimiter` must be a single ASCII character".into(),
        ));
    }
    if dry {
        return dry_run("render", &s);
    }

    let options = CsvOptions {
        delimiter: s.delimiter as u8,
        time_column: ColumnSelector::from(s.time_column.as_str()),
        height_column: ColumnSelector::from(s.height_column.as_str()),
        value_column: ColumnSelector::from(s.value_column.as_str()),
        missing_tokens: s.missing_tokens.clone(),
        ..CsvOptions::default()
    };
    let series = parse_csv(&s.data, &options)?;
    let observed = series.observed_exponent_span()?;

    let cmap = source.load(span, observed)?;
    reject_span_for_loaded_omc(&cmap, span, &source)?;
    if domain.is_some() && cmap.as_omc().is_some() {
        return Err(CliError::Config(
            "`--domain-min`/`--domain-max` apply to table colormaps; OMC maps use their decades"
                .into(),
        ));
    }
    let table_domain = match (&cmap, span) {
        (Colormap::Table(_), Some((lo, hi))) => Some(LogDomain::decades(lo, hi)?),
        _ => domain,
    };
    let spec = RenderSpec {
        width: s.width,
        height: s.height,
        point_size: s.point_size,
        colorbar,
        tick_labels: s.tick_labels,
        domain: table_domain,
        samples_per_decade: s.samples_per_decade,
        ..RenderSpec::default()
    };
    let rendered = render_scatter_detailed(&series, &cmap, &spec)?;
    write_image(&rendered.image, &s.output)?;

    let (vmin, vmax) = series.value_range();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "data {}: {} rows, {} drawn, {}",
        s.data.display(),
        series.len(),
        rendered.drawn,
        series.mask_counts()
    );
    let _ = writeln!(
        out,
        "values {vmin:.3e} .. {vmax:.3e}, exponents {}..{}",
        observed.0, observed.1
    );
    let _ = writeln!(out, "colormap {}", cmap.name());
    let _ = writeln!(out, "out of range: {}", rendered.out_of_range);
    let _ = writeln!(
        out,
        "wrote {} ({}x{})",
        s.output.display(),
        rendered.image.width(),
        rendered.image.height()
    );
    Ok(out)
}

// ---------------------------------------------------------------- profile

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ProfileArgs {
    /// Colormap: omc, omc_sl, viridis, rainbow or a colormap file [default: omc]
    #[arg(long)]
    pub cmap: Option<String>,
    /// deltae, hsv, boundary or monotonicity [default: deltae]
    #[arg(long)]
    pub kind: Option<String>,
    /// de76 or de2000 [default: de76]
    #[arg(long)]
    pub metric: Option<String>,
    /// Stops per band when sampling an OMC map [default: 64]
    #[arg(long)]
    pub samples_per_band: Option<usize>,
    /// First exponent of a builtin OMC map [default: -8]
    #[arg(long)]
    pub emin: Option<i32>,
    /// Last exponent of a builtin OMC map [default: -2]
    #[arg(long)]
    pub emax: Option<i32>,
    /// Output CSV
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
struct ProfileSettings {
    cmap: String,
    kind: String,
    metric: String,
    samples_per_band: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    emin: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    emax: Option<i32>,
    output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ProfileKind {
    DeltaE,
    Hsv,
    Boundary,
    Monotonicity,
}

impl std::str::FromStr for ProfileKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "deltae" | "delta-e" => Ok(ProfileKind::DeltaE),
            "hsv" => Ok(ProfileKind::Hsv),
            "boundary" => Ok(ProfileKind::Boundary),
            "monotonicity" => Ok(ProfileKind::Monotonicity),
            _ => Err(()),
        }
    }
}

pub fn profile(a: &ProfileArgs, dry: bool) -> CmdResult {
    let s = ProfileSettings {
        cmap: a.cmap.clone().unwrap_or_else(|| "omc".into()),
        kind: a.kind.clone().unwrap_or_else(|| "deltae".into()),
        metric: a
            .metric
            .clone()
            .unwrap_or_else(|| DeltaE::default().as_str().into()),
        samples_per_band: a.samples_per_band.unwrap_or(DEFAULT_SAMPLES_PER_BAND),
        emin: a.emin,
        emax: a.emax,
        output: required(&a.output, "--output")?,
    };
    let kind: ProfileKind = parse_enum(&s.kind, "--kind")?;
    let metric: DeltaE = parse_enum(&s.metric, "--metric")?;
    let span = span_of(s.emin, s.emax)?;
    let source = Source::parse(&s.cmap);
    if span.is_some() && !source.is_builtin_omc() {
        return Err(CliError::Config(
            "`--emin`/`--emax` only apply to the builtin omc and omc_sl maps here".into(),
        ));
    }
    if s.samples_per_band < 2 {
        return Err(CliError::Usage(
            "`--samples-per-band` must be at least 2".into(),
        ));
    }
    if dry {
        return dry_run("profile", &s);
    }
    let cmap = source.load(span, DEFAULT_SPAN)?;
    let needs_omc = || {
        cmap.as_omc().ok_or_else(|| {
            CliError::Core(omc_core::Error::InvalidColormap(format!(
                "`{}` profiles need an OMC colormap, `{}` is a plain table",
                s.kind,
                cmap.name()
            )))
        })
    };

    let mut out = String::new();
    let csv =
        match kind {
            ProfileKind::DeltaE => {
                let table = sampled_table(&cmap, s.samples_per_band)?;
                let p = delta_e_profile(&table, metric);
                let (imax, max) = p.values.iter().copied().enumerate().fold(
                    (0, f64::NEG_INFINITY),
                    |b, (i, v)| if v > b.1 { (i, v) } else { b },
                );
                let _ = writeln!(
                    out,
                    "deltae {} over {} steps: max {:.4} at {:.6}, min {:.4}, mean {:.4}",
                    metric.as_str(),
                    p.len(),
                    max,
                    p.positions[imax],
                    p.min().unwrap_or(0.0),
                    p.values.iter().sum::<f64>() / p.len() as f64
                );
                p.to_csv()
            }
            ProfileKind::Hsv => {
                let table = sampled_table(&cmap, s.samples_per_band)?;
                let p = hsv_profile(&table);
                let _ = writeln!(
                    out,
                    "hsv over {} stops: h {:.2}..{:.2}, s {:.4}..{:.4}, v {:.4}..{:.4}",
                    p.h.len(),
                    p.h.min().unwrap_or(0.0),
                    p.h.max().unwrap_or(0.0),
                    p.s.min().unwrap_or(0.0),
                    p.s.max().unwrap_or(0.0),
                    p.v.min().unwrap_or(0.0),
                    p.v.max().unwrap_or(0.0)
                );
                p.to_csv()
            }
            ProfileKind::Boundary => boundary_csv(&boundary_report(needs_omc()?, metric)),
            ProfileKind::Monotonicity => {
                let report = monotonicity_check(needs_omc()?);
                let monotone = report.iter().filter(|b| b.monotone).count();
                let _ = writeln!(
                    out,
                    "monotonicity: {monotone}/{} bands strictly monotone, directions {}",
                    report.len(),
                    join(
                        report
                            .iter()
                            .map(|b| b.direction.map_or("none", |d| d.as_str()))
                    )
                );
                monotonicity_csv(&report)
            }
        };
    if let Some(omc) = cmap.as_omc() {
        out.push_str(&boundary_line(omc, metric));
    }
    write_text(&s.output, &csv)?;
    let _ = writeln!(out, "wrote {}", s.output.display());
    Ok(out)
}

// ---------------------------------------------------------------- lookup

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct LookupArgs {
    /// Colormap: omc, omc_sl, viridis, rainbow or a colormap file
    pub cmap: Option<String>,
    /// Value to color
    pub value: Option<f64>,
    /// First exponent of a builtin OMC map or of a table's decade domain
    #[arg(long)]
    pub emin: Option<i32>,
    /// Last exponent of a builtin OMC map or of a table's decade domain
    #[arg(long)]
    pub emax: Option<i32>,
    /// Lower end of an explicit value domain for table colormaps
    #[arg(long)]
    pub domain_min: Option<f64>,
    /// Upper end of an explicit value domain for table colormaps
    #[arg(long)]
    pub domain_max: Option<f64>,
}

pub fn lookup(a: &LookupArgs, dry: bool) -> CmdResult {
    let name = required(&a.cmap, "CMAP")?;
    let value = required(&a.value, "VALUE")?;
    let span = span_of(a.emin, a.emax)?;
    let domain = explicit_domain(a.domain_min, a.domain_max)?;
    if span.is_some() && domain.is_some() {
        return Err(CliError::Config(
            "give either `--emin`/`--emax` or `--domain-min`/`--domain-max`, not both".into(),
        ));
    }
    if dry {
        return dry_run("lookup", a);
    }
    let source = Source::parse(&name);
    let cmap = source.load(span, DEFAULT_SPAN)?;
    reject_span_for_loaded_omc(&cmap, span, &source)?;
    let hit = match &cmap {
        Colormap::Omc(c) => {
            if domain.is_some() {
                return Err(CliError::Config(
                    "`--domain-min`/`--domain-max` apply to table colormaps".into(),
                ));
            }
            c.lookup(value)?
        }
        Colormap::Table(t) => {
            let domain =
                match (span, domain) {
                    (Some((lo, hi)), _) => LogDomain::decades(lo, hi)?,
                    (None, Some(d)) => d,
                    (None, None) => return Err(CliError::Usage(
                        "table colormaps need `--emin`/`--emax` or `--domain-min`/`--domain-max`"
                            .into(),
                    )),
                };
            t.lookup(value, &domain)?
        }
    };
    let [r, g, b] = hit.color.to_u8();
    Ok(format!(
        "{r},{g},{b} {}{}\n",
        hit.color.to_hex(),
        if hit.out_of_range { " (clamped)" } else { "" }
    ))
}

// ---------------------------------------------------------------- rangesize

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RangesizeArgs {
    /// Lower end of the answer range
    pub low: Option<f64>,
    /// Upper end of the answer range
    pub high: Option<f64>,
}

pub fn rangesize(a: &RangesizeArgs, dry: bool) -> CmdResult {
    let low = required(&a.low, "LOW")?;
    let high = required(&a.high, "HIGH")?;
    if dry {
        return dry_run("rangesize", a);
    }
    let ans = RangeAnswer::from_values(low, high)?;
    Ok(format!("{:.6}\n", range_size(&ans)))
}

// ---------------------------------------------------------------- export

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExportArgs {
    /// Colormap: omc, omc_sl, viridis, rainbow or a colormap file [default: omc]
    #[arg(long)]
    pub cmap: Option<String>,
    /// Output file
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// native or json [default: from the output extension]
    #[arg(long)]
    pub format: Option<String>,
    /// Stops per band when sampling an OMC map into a native table [default: 64]
    #[arg(long)]
    pub samples_per_band: Option<usize>,
    /// First exponent of a builtin OMC map [default: -8]
    #[arg(long)]
    pub emin: Option<i32>,
    /// Last exponent of a builtin OMC map [default: -2]
    #[arg(long)]
    pub emax: Option<i32>,
}

pub fn export(a: &ExportArgs, dry: bool) -> CmdResult {
    let output = required(&a.output, "--output")?;
    let format = match &a.format {
        Some(f) => f.parse::<TableFormat>()?,
        None => TableFormat::from_path(&output)?,
    };
    let span = span_of(a.emin, a.emax)?;
    let source = Source::parse(a.cmap.as_deref().unwrap_or("omc"));
    if span.is_some() && !source.is_builtin_omc() {
        return Err(CliError::Config(
            "`--emin`/`--emax` only apply to the builtin omc and omc_sl maps here".into(),
        ));
    }
    let per_band = a.samples_per_band.unwrap_or(DEFAULT_SAMPLES_PER_BAND);
    if per_band < 2 {
        return Err(CliError::Usage(
            "`--samples-per-band` must be at least 2".into(),
        ));
    }
    if dry {
        return dry_run("export", a);
    }
    let cmap = source.load(span, DEFAULT_SPAN)?;
    let stops = match (&cmap, format) {
        (Colormap::Omc(_), TableFormat::Json) => {
            save_colormap(&cmap, &output)?;
            None
        }
        _ => {
            let table = match &cmap {
                Colormap::Omc(c) => c.sample_table(per_band * c.band_count())?,
                Colormap::Table(t) => t.clone(),
            };
            export_table(&table, &output, format)?;
            Some(table.len())
        }
    };
    Ok(match stops {
        Some(n) => format!(
            "wrote {} ({} stops) to {}\n",
            cmap.name(),
            n,
            output.display()
        ),
        None => format!(
            "wrote {} (structured) to {}\n",
            cmap.name(),
            output.display()
        ),
    })
}

// ---------------------------------------------------------------- import

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ImportArgs {
    /// Colormap file (.txt/.csv/.rgb native, .json/.cmap structured)
    pub input: Option<PathBuf>,
    /// Write the imported table in the format implied by this extension
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn import(a: &ImportArgs, dry: bool) -> CmdResult {
    let input = required(&a.input, "INPUT")?;
    if dry {
        return dry_run("import", a);
    }
    let mut out = String::new();
    if let Colormap::Omc(c) = load_colormap(&input)? {
        let _ = writeln!(
            out,
            "structured {}: {} bands, directions {}",
            c.name(),
            c.band_count(),
            join(c.directions().iter().map(|d| d.as_str()))
        );
    }
    let table = import_table(&input)?;
    let [r0, g0, b0] = table.to_u8()[0];
    let [r1, g1, b1] = table.to_u8()[table.len() - 1];
    let _ = writeln!(
        out,
        "imported {}: {} stops, first {r0},{g0},{b0} last {r1},{g1},{b1}",
        table.name(),
        table.len()
    );
    if let Some(path) = &a.output {
        export_table(&table, path, TableFormat::from_path(path)?)?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(out)
}

//! Diagnostics: the range-size metric for read-off answers, adjacent-step
//! color differences, HSV channel profiles, band boundary distances and
//! lightness monotonicity.

use std::fmt::Write as _;

use crate::color::{srgb_to_hsv, DeltaE, LabColor};
use crate::colormap::{ColormapTable, Direction, ExponentBand, OmcColormap, RAMP_SAMPLES};
use crate::scinum::{compose, decompose, ScientificValue};
use crate::{Error, Result};

/// A read-off answer given as a value range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeAnswer {
    pub low: ScientificValue,
    pub high: ScientificValue,
}

impl RangeAnswer {
    pub fn new(low: ScientificValue, high: ScientificValue) -> Result<Self> {
        let (lo, hi) = (compose(low), compose(high));
        if lo > hi {
            return Err(Error::InvalidRange { low: lo, high: hi });
        }
        Ok(Self { low, high })
    }

    pub fn from_values(low: f64, high: f64) -> Result<Self> {
        Self::new(decompose(low)?, decompose(high)?)
    }
}

/// `((e_high - e_low) * 10 + (m_high - m_low)) / 10`: one decade counts as ten
/// mantissa units.
pub fn range_size(ans: &RangeAnswer) -> f64 {
    let exp = f64::from(ans.high.exponent) - f64::from(ans.low.exponent);
    (exp * 10.0 + (ans.high.mantissa - ans.low.mantissa)) / 10.0
}

/// A curve sampled over `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSeries {
    pub positions: Vec<f64>,
    pub values: Vec<f64>,
}

impl ProfileSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.iter().copied().reduce(f64::max)
    }

    pub fn min(&self) -> Option<f64> {
        self.values.iter().copied().reduce(f64::min)
    }

    /// Two-column CSV with a `position,value` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("position,value\n");
        for (p, v) in self.positions.iter().zip(&self.values) {
            let _ = writeln!(out, "{p},{v}");
        }
        out
    }
}

fn lab_stops(table: &ColormapTable) -> Vec<LabColor> {
    table.stops().iter().map(|c| c.to_lab()).collect()
}

/// Color difference between consecutive stops, placed at step midpoints.
pub fn delta_e_profile(table: &ColormapTable, metric: DeltaE) -> ProfileSeries {
    let labs = lab_stops(table);
    let steps = (labs.len() - 1) as f64;
    let (positions, values) = labs
        .windows(2)
        .enumerate()
        .map(|(i, w)| ((i as f64 + 0.5) / steps, metric.between(w[0], w[1])))
        .unzip();
    ProfileSeries { positions, values }
}

/// Largest hue step (degrees) that is still treated as continuous when
/// unwrapping across 0°/360°.
pub const HUE_UNWRAP_LIMIT: f64 = 30.0;

/// Per-stop HSV channels. Hue is in degrees; S and V in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HsvProfile {
    pub h: ProfileSeries,
    pub s: ProfileSeries,
    pub v: ProfileSeries,
}

impl HsvProfile {
    /// CSV with a `position,h,s,v` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("position,h,s,v\n");
        for i in 0..self.h.len() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                self.h.positions[i], self.h.values[i], self.s.values[i], self.v.values[i]
            );
        }
        out
    }
}

/// HSV channels of every stop. Hue is unwrapped across 0°/360° when the
/// wrapped step is at most [`HUE_UNWRAP_LIMIT`], so a ramp that straddles red
/// stays continuous; larger steps (a new band) restart at the canonical hue.
pub fn hsv_profile(table: &ColormapTable) -> HsvProfile {
    let steps = (table.len() - 1) as f64;
    let positions: Vec<f64> = (0..table.len()).map(|i| i as f64 / steps).collect();
    let mut h: Vec<f64> = Vec::with_capacity(table.len());
    let mut s = Vec::with_capacity(table.len());
    let mut v = Vec::with_capacity(table.len());
    for c in table.stops() {
        let hsv = srgb_to_hsv(*c);
        let hue = match h.last() {
            Some(&prev) => {
                let step = (hsv.h - prev).rem_euclid(360.0);
                let step = if step > 180.0 { step - 360.0 } else { step };
                if step.abs() <= HUE_UNWRAP_LIMIT {
                    prev + step
                } else {
                    hsv.h
                }
            }
            None => hsv.h,
        };
        h.push(hue);
        s.push(hsv.s);
        v.push(hsv.v);
    }
    HsvProfile {
        h: ProfileSeries {
            positions: positions.clone(),
            values: h,
        },
        s: ProfileSeries {
            positions: positions.clone(),
            values: s,
        },
        v: ProfileSeries {
            positions,
            values: v,
        },
    }
}

/// Color difference across the boundary after band `index`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryDelta {
    pub index: usize,
    /// Exponent of the band below the boundary.
    pub lower_exponent: i32,
    pub delta_e: f64,
}

/// One entry per interior boundary: the end of band `k` against the start
/// of band `k + 1`.
pub fn boundary_report(cmap: &OmcColormap, metric: DeltaE) -> Vec<BoundaryDelta> {
    cmap.bands()
        .windows(2)
        .enumerate()
        .map(|(index, w)| BoundaryDelta {
            index,
            lower_exponent: w[0].exponent,
            delta_e: metric.between(w[0].lab_at(1.0), w[1].lab_at(0.0)),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySummary {
    pub max: f64,
    pub min: f64,
    /// `max / min`
    pub ratio: f64,
}

pub fn summarize_boundaries(report: &[BoundaryDelta]) -> Option<BoundarySummary> {
    let max = report.iter().map(|b| b.delta_e).reduce(f64::max)?;
    let min = report.iter().map(|b| b.delta_e).reduce(f64::min)?;
    Some(BoundarySummary {
        max,
        min,
        ratio: max / min,
    })
}

pub fn boundary_csv(report: &[BoundaryDelta]) -> String {
    let mut out = String::from("boundary,lower_exponent,delta_e\n");
    for b in report {
        let _ = writeln!(out, "{},{},{}", b.index, b.lower_exponent, b.delta_e);
    }
    out
}

/// Lightness behavior of one band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandMonotonicity {
    pub exponent: i32,
    /// Every consecutive L* step is nonzero and of one sign.
    pub monotone: bool,
    /// Smallest `|ΔL*|` between consecutive samples.
    pub min_step: f64,
    /// Sign of the steps when monotone.
    pub direction: Option<Direction>,
}

/// Samples the band at [`RAMP_SAMPLES`] positions through the sRGB output
/// and checks that L* moves strictly one way.
pub fn band_monotonicity(band: &ExponentBand) -> BandMonotonicity {
    let last = (RAMP_SAMPLES - 1) as f64;
    let l: Vec<f64> = (0..RAMP_SAMPLES)
        .map(|i| band.color_at(i as f64 / last).to_lab().l)
        .collect();
    let steps: Vec<f64> = l.windows(2).map(|w| w[1] - w[0]).collect();
    let min_step = steps.iter().map(|d| d.abs()).fold(f64::INFINITY, f64::min);
    let direction = if steps.iter().all(|&d| d > 0.0) {
        Some(Direction::Ascending)
    } else if steps.iter().all(|&d| d < 0.0) {
        Some(Direction::Descending)
    } else {
        None
    };
    BandMonotonicity {
        exponent: band.exponent,
        monotone: direction.is_some(),
        min_step,
        direction,
    }
}

pub fn monotonicity_check(cmap: &OmcColormap) -> Vec<BandMonotonicity> {
    cmap.bands().iter().map(band_monotonicity).collect()
}

pub fn monotonicity_csv(report: &[BandMonotonicity]) -> String {
    let mut out = String::from("exponent,monotone,direction,min_step\n");
    for b in report {
        let dir = b.direction.map_or("none", |d| d.as_str());
        let _ = writeln!(out, "{},{},{},{}", b.exponent, b.monotone, dir, b.min_step);
    }
    out
}

//! Hue anchors: the Lab-hue wheel behind band ramps and the coordinate-descent
//! equalizer for boundary color differences.

use crate::color::{self, hue_distance, srgb_to_hsv, wrap_degrees, LabColor};
use crate::{Error, Result};

use super::{LightnessRange, MAX_BANDS, RAMP_SAMPLES};

/// Degrees between wheel entries.
const WHEEL_STEP: f64 = 0.5;
const GAMUT_TOL: f64 = 1e-9;
const CHROMA_CEILING: f64 = 160.0;
const MAX_SWEEPS: usize = 200;
const REL_IMPROVEMENT: f64 = 1e-6;
const SCAN_INTERVALS: usize = 16;
const GOLDEN_TOL: f64 = 1e-7;

/// Default upper bound on the HSV hue drift (degrees) inside one band ramp.
pub const DEFAULT_MAX_HUE_DRIFT: f64 = 10.0;

/// Geometry of a single-hue ramp: constant Lab hue angle and chroma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampGeometry {
    pub lab_hue: f64,
    pub chroma: f64,
}

impl RampGeometry {
    pub fn endpoints(&self, lightness: LightnessRange) -> (LabColor, LabColor) {
        (
            LabColor::from_lch(lightness.low, self.chroma, self.lab_hue),
            LabColor::from_lch(lightness.high, self.chroma, self.lab_hue),
        )
    }

    fn ab(&self) -> (f64, f64) {
        let (s, c) = self.lab_hue.to_radians().sin_cos();
        (self.chroma * c, self.chroma * s)
    }
}

fn ramp_in_gamut(lab_hue: f64, chroma: f64, lightness: LightnessRange, samples: usize) -> bool {
    (0..samples).all(|i| {
        let t = i as f64 / (samples - 1) as f64;
        let l = lightness.low + t * (lightness.high - lightness.low);
        color::in_srgb_gamut(LabColor::from_lch(l, chroma, lab_hue), GAMUT_TOL)
    })
}

/// Spread (max - min, unwrapped) of the HSV hue along a ramp.
pub fn ramp_hue_drift(start: LabColor, end: LabColor, samples: usize) -> f64 {
    let mut prev: Option<f64> = None;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let h = srgb_to_hsv(start.lerp(&end, t).to_rgb().value).h;
        let h = match prev {
            None => h,
            Some(p) => p + (h - p + 180.0).rem_euclid(360.0) - 180.0,
        };
        prev = Some(h);
        lo = lo.min(h);
        hi = hi.max(h);
    }
    hi - lo
}

/// Largest chroma at `lab_hue` that keeps the ramp's endpoints and midpoint in
/// the sRGB gamut and the HSV hue drift along the ramp within `max_drift`.
pub fn ramp_chroma(lab_hue: f64, lightness: LightnessRange, max_drift: f64) -> f64 {
    let levels = [lightness.low, lightness.mid(), lightness.high];
    let fits = |c: f64| {
        levels
            .iter()
            .all(|&l| color::in_srgb_gamut(LabColor::from_lch(l, c, lab_hue), GAMUT_TOL))
    };
    let (mut lo, mut hi) = (0.0, CHROMA_CEILING);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut chroma = lo;

    let drift = |c: f64| {
        let g = RampGeometry { lab_hue, chroma: c };
        let (s, e) = g.endpoints(lightness);
        ramp_hue_drift(s, e, RAMP_SAMPLES)
    };
    if drift(chroma) > max_drift {
        let (mut lo, mut hi) = (0.0, chroma);
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if drift(mid) <= max_drift {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        chroma = lo;
    }
    // The gamut boundary is not convex in Lab; shave until every sample fits.
    while chroma > 0.0 && !ramp_in_gamut(lab_hue, chroma, lightness, RAMP_SAMPLES) {
        chroma *= 0.999;
    }
    chroma
}

#[derive(Debug, Clone, Copy)]
struct WheelEntry {
    lab_hue: f64,
    chroma: f64,
    /// HSV hue of the ramp midpoint, unwrapped to increase monotonically.
    hsv_hue: f64,
}

/// Tabulated map from CIELAB hue angle to the ramp it produces under one
/// lightness template, invertible by HSV hue of the ramp midpoint.
#[derive(Debug, Clone)]
pub struct HueWheel {
    lightness: LightnessRange,
    max_drift: f64,
    entries: Vec<WheelEntry>,
}

impl HueWheel {
    pub fn new(lightness: LightnessRange, max_drift: f64) -> Result<Self> {
        let steps = (360.0 / WHEEL_STEP) as usize;
        let mut entries = Vec::with_capacity(steps + 1);
        let mut prev: Option<f64> = None;
        for i in 0..steps {
            let lab_hue = i as f64 * WHEEL_STEP;
            let chroma = ramp_chroma(lab_hue, lightness, max_drift);
            let mid = LabColor::from_lch(lightness.mid(), chroma, lab_hue);
            let raw = srgb_to_hsv(mid.to_rgb().value).h;
            let hsv_hue = match prev {
                None => raw,
                Some(p) => p + (raw - p + 180.0).rem_euclid(360.0) - 180.0,
            };
            if let Some(p) = prev {
                if hsv_hue <= p {
                    return Err(Error::InvalidColormap(format!(
                        "lightness template {}..{} gives a non-monotone hue wheel near {lab_hue}°",
                        lightness.low, lightness.high
                    )));
                }
            }
            prev = Some(hsv_hue);
            entries.push(WheelEntry {
                lab_hue,
                chroma,
                hsv_hue,
            });
        }
        let first = entries[0];
        let last = entries[steps - 1];
        let closing = first.hsv_hue + 360.0;
        if closing <= last.hsv_hue {
            return Err(Error::InvalidColormap(
                "hue wheel does not close monotonically".into(),
            ));
        }
        entries.push(WheelEntry {
            lab_hue: 360.0,
            chroma: first.chroma,
            hsv_hue: closing,
        });
        Ok(Self {
            lightness,
            max_drift,
            entries,
        })
    }

    pub fn lightness(&self) -> LightnessRange {
        self.lightness
    }

    pub fn max_drift(&self) -> f64 {
        self.max_drift
    }

    /// Interpolated ramp whose midpoint has HSV hue `anchor`.
    pub fn geometry(&self, anchor: f64) -> RampGeometry {
        let base = self.entries[0].hsv_hue;
        let target = base + (anchor - base).rem_euclid(360.0);
        let idx = self
            .entries
            .partition_point(|e| e.hsv_hue <= target)
            .clamp(1, self.entries.len() - 1);
        let (a, b) = (self.entries[idx - 1], self.entries[idx]);
        let f = ((target - a.hsv_hue) / (b.hsv_hue - a.hsv_hue)).clamp(0.0, 1.0);
        RampGeometry {
            lab_hue: wrap_degrees(a.lab_hue + f * (b.lab_hue - a.lab_hue)),
            chroma: a.chroma + f * (b.chroma - a.chroma),
        }
    }

    /// Like [`geometry`](Self::geometry) but with the chroma recomputed
    /// exactly at the interpolated Lab hue.
    pub fn exact_geometry(&self, anchor: f64) -> RampGeometry {
        let g = self.geometry(anchor);
        RampGeometry {
            lab_hue: g.lab_hue,
            chroma: ramp_chroma(g.lab_hue, self.lightness, self.max_drift),
        }
    }

    /// DeltaE76 between the light end of one ramp and the dark start of the
    /// next, for every consecutive pair of anchors.
    pub fn boundary_deltas(&self, anchors: &[f64]) -> Vec<f64> {
        let dl = self.lightness.high - self.lightness.low;
        let ab: Vec<(f64, f64)> = anchors.iter().map(|&h| self.geometry(h).ab()).collect();
        ab.windows(2)
            .map(|w| {
                let (da, db) = (w[0].0 - w[1].0, w[0].1 - w[1].1);
                (dl * dl + da * da + db * db).sqrt()
            })
            .collect()
    }

    /// Population variance of [`boundary_deltas`](Self::boundary_deltas).
    pub fn objective(&self, anchors: &[f64]) -> f64 {
        variance(&self.boundary_deltas(anchors))
    }
}

fn variance(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n
}

/// Minimum pairwise hue separation for `n` bands.
pub fn min_separation(n: usize) -> f64 {
    360.0 / (2.0 * n as f64)
}

/// Evenly spaced starting anchors. The spread is capped so the wrap-around gap
/// between the last and first hue also respects [`min_separation`].
pub fn default_initial_hues(n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![0.0; n];
    }
    let span = 330.0f64.min(360.0 - min_separation(n));
    (0..n).map(|k| span * k as f64 / (n - 1) as f64).collect()
}

/// Outcome of [`equalize_hues`].
#[derive(Debug, Clone, PartialEq)]
pub struct HueEqualization {
    /// Optimized anchors in `[0, 360)`, same cyclic order as the input.
    pub hues: Vec<f64>,
    pub initial_objective: f64,
    pub objective: f64,
    /// Objective after every completed sweep.
    pub history: Vec<f64>,
    pub sweeps: usize,
    /// `false` when the sweep budget ran out before the relative improvement
    /// per sweep fell below 1e-6; `hues` then holds the best point found.
    pub converged: bool,
}

pub(super) fn validate_hues(n_bands: usize, hues: &[f64]) -> Result<()> {
    if !(2..=MAX_BANDS).contains(&n_bands) {
        return Err(Error::TooManyBands {
            bands: n_bands,
            max: MAX_BANDS,
        });
    }
    if hues.len() != n_bands {
        return Err(Error::InvalidHues(format!(
            "expected {n_bands} hues, got {}",
            hues.len()
        )));
    }
    if hues.iter().any(|h| !h.is_finite()) {
        return Err(Error::InvalidHues("hues must be finite".into()));
    }
    if hues.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidHues(
            "hues must be strictly increasing".into(),
        ));
    }
    if hues[n_bands - 1] - hues[0] >= 360.0 {
        return Err(Error::InvalidHues(
            "hues must lie within one 360° turn".into(),
        ));
    }
    Ok(())
}

/// Golden-section minimization of `f` on `[a, b]`.
fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// 1-D line search on `[lo, hi]`: a coarse scan picks the bracket, golden
/// section refines it.
fn line_search(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let xs: Vec<f64> = (0..=SCAN_INTERVALS)
        .map(|i| lo + (hi - lo) * i as f64 / SCAN_INTERVALS as f64)
        .collect();
    let (best, fbest) =
        xs.iter()
            .map(|&x| (x, f(x)))
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |acc, (i, (_, fx))| if fx < acc.1 { (i, fx) } else { acc },
            );
    let a = xs[best.saturating_sub(1)];
    let b = xs[(best + 1).min(SCAN_INTERVALS)];
    let (x, fx) = golden_section(f, a, b, GOLDEN_TOL);
    if fx <= fbest {
        (x, fx)
    } else {
        (xs[best], fbest)
    }
}

/// Equalizes boundary color differences by moving the interior hue anchors.
///
/// The first and last anchors stay fixed; each interior anchor is confined
/// between its neighbours with [`min_separation`] clearance. Sweeps of
/// coordinate descent run until the relative objective improvement of a
/// sweep drops to 1e-6 or 200 sweeps have run.
pub fn equalize_hues(
    n_bands: usize,
    initial_hues: &[f64],
    lightness: LightnessRange,
) -> Result<HueEqualization> {
    let wheel = HueWheel::new(lightness, DEFAULT_MAX_HUE_DRIFT)?;
    equalize_hues_on(&wheel, n_bands, initial_hues)
}

pub fn equalize_hues_on(
    wheel: &HueWheel,
    n_bands: usize,
    initial_hues: &[f64],
) -> Result<HueEqualization> {
    validate_hues(n_bands, initial_hues)?;
    let sep = min_separation(n_bands);
    let mut hues = initial_hues.to_vec();
    let initial_objective = wheel.objective(&hues);
    let mut current = initial_objective;
    let mut history = Vec::new();
    let mut converged = n_bands < 3 || current == 0.0;

    while !converged && history.len() < MAX_SWEEPS {
        for k in 1..n_bands - 1 {
            let (lo, hi) = (hues[k - 1] + sep, hues[k + 1] - sep);
            if lo > hi {
                continue;
            }
            let mut trial = hues.clone();
            let f = |x: f64| {
                let mut probe = trial.clone();
                probe[k] = x;
                wheel.objective(&probe)
            };
            let (x, fx) = line_search(&f, lo, hi);
            if fx < current {
                trial[k] = x;
                hues = trial;
                current = fx;
            }
        }
        let previous = history.last().copied().unwrap_or(initial_objective);
        history.push(current);
        let improvement = previous - current;
        if current == 0.0 || improvement <= REL_IMPROVEMENT * previous {
            converged = true;
        }
    }

    Ok(HueEqualization {
        hues: hues.iter().map(|&h| wrap_degrees(h)).collect(),
        initial_objective,
        objective: current,
        sweeps: history.len(),
        history,
        converged,
    })
}

/// Smallest cyclic distance between any two anchors.
pub fn min_pairwise_distance(hues: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, &a) in hues.iter().enumerate() {
        for &b in &hues[i + 1..] {
            best = best.min(hue_distance(a, b));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_hues_respect_separation() {
        for n in 2..=MAX_BANDS {
            let hues = default_initial_hues(n);
            assert_eq!(hues.len(), n);
            assert!(
                min_pairwise_distance(&hues) >= min_separation(n) - 1e-9,
                "n={n}"
            );
        }
        assert_eq!(default_initial_hues(7)[6], 330.0);
    }

    #[test]
    fn wheel_inverts_midpoint_hue() {
        let wheel = HueWheel::new(LightnessRange::default(), DEFAULT_MAX_HUE_DRIFT).unwrap();
        for anchor in [0.0, 37.0, 120.0, 200.0, 300.0, 359.0] {
            let g = wheel.exact_geometry(anchor);
            let mid = LabColor::from_lch(LightnessRange::default().mid(), g.chroma, g.lab_hue);
            let h = srgb_to_hsv(mid.to_rgb().value).h;
            assert!(hue_distance(h, anchor) < 1.0, "anchor {anchor} -> {h}");
        }
    }

    #[test]
    fn ramps_stay_in_gamut_and_within_drift() {
        let lr = LightnessRange::default();
        for i in 0..72 {
            let h = i as f64 * 5.0;
            let c = ramp_chroma(h, lr, DEFAULT_MAX_HUE_DRIFT);
            assert!(c > 5.0, "hue {h}: chroma {c}");
            assert!(ramp_in_gamut(h, c, lr, RAMP_SAMPLES));
            let g = RampGeometry {
                lab_hue: h,
                chroma: c,
            };
            let (s, e) = g.endpoints(lr);
            assert!(ramp_hue_drift(s, e, RAMP_SAMPLES) <= DEFAULT_MAX_HUE_DRIFT + 1e-6);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let lr = LightnessRange::default();
        assert!(matches!(
            equalize_hues(1, &[0.0], lr),
            Err(Error::TooManyBands { .. })
        ));
        assert!(matches!(
            equalize_hues(13, &[0.0; 13], lr),
            Err(Error::TooManyBands { .. })
        ));
        assert!(matches!(
            equalize_hues(3, &[0.0, 50.0, 40.0], lr),
            Err(Error::InvalidHues(_))
        ));
        assert!(matches!(
            equalize_hues(3, &[0.0, 50.0, 400.0], lr),
            Err(Error::InvalidHues(_))
        ));
        assert!(matches!(
            equalize_hues(3, &[0.0, 50.0], lr),
            Err(Error::InvalidHues(_))
        ));
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (x, fx) = golden_section(&|x: f64| (x - 1.25) * (x - 1.25) + 3.0, -4.0, 9.0, 1e-9);
        assert!((x - 1.25).abs() < 1e-6);
        assert!((fx - 3.0).abs() < 1e-12);
    }
}

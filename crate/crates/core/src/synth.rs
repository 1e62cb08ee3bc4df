//! Reproducible synthetic measurement days.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ingest::{CsvOptions, SeriesMetadata, TimeHeightSeries};
use crate::Result;

/// Smallest exponent of generated values.
pub const SYNTH_E_MIN: i32 = -8;
/// Largest exponent of generated values.
pub const SYNTH_E_MAX: i32 = -2;
/// Share of rows whose value is left missing.
pub const MISSING_SHARE: f64 = 0.01;

/// A value with three decimal mantissa digits at log-position `x` in
/// `[e_min, e_max + 1)`. Built from its decimal form so the exponent is
/// exactly `floor(x)`.
fn quantized_value(x: f64) -> f64 {
    let e = x.floor();
    let m = (10f64.powf(x - e) * 1000.0).round() / 1000.0;
    let m = m.clamp(1.0, 9.999);
    format!("{m}e{}", e as i32)
        .parse()
        .expect("decimal literal parses")
}

/// Ice-water-content-like day: `n` rows at random times in `[0, 24]` h and
/// heights in `[0, 12]` km, sorted by time. Values are larger near the
/// ground and vary slowly through the day; about one row in a hundred is
/// missing. Both extreme decades are always present for `n >= 2`.
pub fn ice_water_day(n: usize, seed: u64) -> Result<TimeHeightSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = f64::from(SYNTH_E_MAX - SYNTH_E_MIN + 1);
    let lo = f64::from(SYNTH_E_MIN);
    let hi = f64::from(SYNTH_E_MAX + 1) - 1e-9;

    let mut time: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 24.0).collect();
    time.sort_by(f64::total_cmp);
    let mut height = Vec::with_capacity(n);
    let mut value = Vec::with_capacity(n);
    for &t in &time {
        let h: f64 = rng.random::<f64>() * 12.0;
        let noise: f64 = (0..3).map(|_| rng.random::<f64>()).sum::<f64>() / 3.0 - 0.5;
        let diurnal = 0.12 * (std::f64::consts::TAU * t / 24.0).sin();
        let frac = 0.85 - 0.7 * (h / 12.0) + diurnal + 0.5 * noise;
        let x = (lo + span * frac).clamp(lo, hi);
        height.push((h * 1000.0).round() / 1000.0);
        value.push(if rng.random::<f64>() < MISSING_SHARE {
            f64::NAN
        } else {
            quantized_value(x)
        });
    }
    for t in &mut time {
        *t = (*t * 10_000.0).round() / 10_000.0;
    }
    if n >= 2 {
        value[0] = quantized_value(lo);
        value[n - 1] = quantized_value(hi);
    }

    let metadata = SeriesMetadata {
        source: format!("synthetic-day-{seed}"),
        variable: "ice_water_content".into(),
        units: Some("kg m-3".into()),
    };
    TimeHeightSeries::from_columns(time, height, value, metadata, &CsvOptions::default())
}

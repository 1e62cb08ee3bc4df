//! Scientific-notation decomposition `v = m · 10^e` and positions within and
//! across decades.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Values whose bit pattern lies within this many ulps of an exact power of
/// ten are treated as that power.
const SNAP_ULPS: u64 = 4;

/// A strictly positive number split into a mantissa in `[1, 10)` and an
/// integer exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScientificValue {
    pub mantissa: f64,
    pub exponent: i32,
}

impl ScientificValue {
    pub fn new(mantissa: f64, exponent: i32) -> Result<Self> {
        if !mantissa.is_finite() {
            return Err(Error::NotFinite(mantissa));
        }
        if !(1.0..10.0).contains(&mantissa) {
            return Err(Error::InvalidMantissa(mantissa));
        }
        Ok(Self { mantissa, exponent })
    }

    pub fn value(&self) -> f64 {
        compose(*self)
    }
}

/// How the position inside a decade is measured.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandMode {
    /// `t = (m - 1) / 9`
    #[default]
    MantissaLinear,
    /// `t = log10(m)`
    LogFraction,
}

impl BandMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            BandMode::MantissaLinear => "mantissa-linear",
            BandMode::LogFraction => "log-fraction",
        }
    }

    /// Position in `[0, 1)` of a mantissa in `[1, 10)`.
    pub fn position(&self, mantissa: f64) -> f64 {
        let t = match self {
            BandMode::MantissaLinear => (mantissa - 1.0) / 9.0,
            BandMode::LogFraction => mantissa.log10(),
        };
        t.clamp(0.0, 1.0)
    }
}

impl std::str::FromStr for BandMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mantissa-linear" | "mantissa_linear" | "linear" => Ok(BandMode::MantissaLinear),
            "log-fraction" | "log_fraction" | "log" => Ok(BandMode::LogFraction),
            other => Err(Error::UnsupportedFormat(format!(
                "unknown band mode `{other}`"
            ))),
        }
    }
}

fn check_positive(v: f64) -> Result<()> {
    if v.is_nan() || v.is_infinite() {
        return Err(Error::NotFinite(v));
    }
    if v <= 0.0 {
        return Err(Error::NonPositiveValue(v));
    }
    Ok(())
}

/// The f64 nearest to `10^k`, or `None` if it under- or overflows.
pub fn power_of_ten(k: i32) -> Option<f64> {
    let p: f64 = format!("1e{k}").parse().ok()?;
    (p.is_finite() && p > 0.0).then_some(p)
}

fn ulp_distance(a: f64, b: f64) -> u64 {
    // Both operands are positive and finite, so bit patterns order like the values.
    a.to_bits().abs_diff(b.to_bits())
}

fn snapped_exponent(v: f64) -> Option<i32> {
    if !v.is_normal() {
        return None;
    }
    let k = v.log10().round();
    if !k.is_finite() {
        return None;
    }
    let k = k as i32;
    let p = power_of_ten(k)?;
    (ulp_distance(v, p) <= SNAP_ULPS).then_some(k)
}

/// Splits `v` into mantissa and exponent.
///
/// The mantissa digits are those of the shortest decimal string that
/// round-trips to `v`, so `3.5e-4` yields exactly `(3.5, -4)`. Exact powers of
/// ten start a new decade.
pub fn decompose(v: f64) -> Result<ScientificValue> {
    check_positive(v)?;
    if let Some(exponent) = snapped_exponent(v) {
        return Ok(ScientificValue {
            mantissa: 1.0,
            exponent,
        });
    }
    let repr = format!("{v:e}");
    let (digits, exp) = repr
        .split_once('e')
        .expect("exponential formatting always contains `e`");
    let mantissa: f64 = digits.parse().expect("formatted mantissa parses");
    let exponent: i32 = exp.parse().expect("formatted exponent parses");
    debug_assert!((1.0..10.0).contains(&mantissa));
    Ok(ScientificValue { mantissa, exponent })
}

/// `m · 10^e`, correctly rounded from the decimal representation of `m`.
pub fn compose(sv: ScientificValue) -> f64 {
    format!("{}e{}", sv.mantissa, sv.exponent)
        .parse()
        .unwrap_or(f64::NAN)
}

/// Exponent of `v` and the position of `v` inside that decade.
pub fn band_fraction(v: f64, mode: BandMode) -> Result<(i32, f64)> {
    let sv = decompose(v)?;
    Ok((sv.exponent, mode.position(sv.mantissa)))
}

/// A logarithmic value domain `[vmin, vmax]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogDomain {
    pub vmin: f64,
    pub vmax: f64,
}

impl LogDomain {
    pub fn new(vmin: f64, vmax: f64) -> Result<Self> {
        let valid = vmin.is_finite() && vmax.is_finite() && vmin > 0.0 && vmin < vmax;
        if !valid {
            return Err(Error::InvalidDomain { vmin, vmax });
        }
        Ok(Self { vmin, vmax })
    }

    /// The domain `[10^e_min, 10^(e_max + 1)]` covering whole decades.
    pub fn decades(e_min: i32, e_max: i32) -> Result<Self> {
        let lo = power_of_ten(e_min);
        let hi = e_max.checked_add(1).and_then(power_of_ten);
        match (lo, hi) {
            (Some(lo), Some(hi)) => Self::new(lo, hi),
            _ => Err(Error::InvalidDomain {
                vmin: f64::NAN,
                vmax: f64::NAN,
            }),
        }
    }

    pub fn normalize(&self, v: f64) -> Result<LogPosition> {
        check_positive(v)?;
        let t = (v / self.vmin).ln() / (self.vmax / self.vmin).ln();
        Ok(LogPosition {
            t: t.clamp(0.0, 1.0),
            out_of_range: v < self.vmin || v > self.vmax,
        })
    }

    /// Inverse of [`normalize`](Self::normalize) for `t` in `[0, 1]`.
    pub fn value_at(&self, t: f64) -> f64 {
        self.vmin * (self.vmax / self.vmin).powf(t)
    }
}

/// Position on a log scale; `out_of_range` is set when the input was clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPosition {
    pub t: f64,
    pub out_of_range: bool,
}

pub fn log_normalize(v: f64, vmin: f64, vmax: f64) -> Result<LogPosition> {
    LogDomain::new(vmin, vmax)?.normalize(v)
}

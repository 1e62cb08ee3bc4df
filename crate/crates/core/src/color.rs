//! sRGB, HSV and CIELAB (D65, 2° observer) colors and color differences.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Gamma-encoded sRGB with channels in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RgbColor {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

/// Hue in degrees `[0, 360)`, saturation and value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HsvColor {
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

/// CIELAB under D65. `l` is in `[0, 100]` for in-gamut sRGB colors.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LabColor {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

/// A conversion result that may have been clamped into range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Clamped<T> {
    pub value: T,
    pub clamped: bool,
}

impl RgbColor {
    pub const BLACK: RgbColor = RgbColor::new(0.0, 0.0, 0.0);
    pub const WHITE: RgbColor = RgbColor::new(1.0, 1.0, 1.0);

    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        Self { r, g, b }
    }

    pub fn from_u8([r, g, b]: [u8; 3]) -> Self {
        Self::new(
            f64::from(r) / 255.0,
            f64::from(g) / 255.0,
            f64::from(b) / 255.0,
        )
    }

    /// 8-bit view, rounding to nearest.
    pub fn to_u8(&self) -> [u8; 3] {
        let q = |c: f64| (c.clamp(0.0, 1.0) * 255.0).round() as u8;
        [q(self.r), q(self.g), q(self.b)]
    }

    pub fn to_hex(&self) -> String {
        let [r, g, b] = self.to_u8();
        format!("#{r:02x}{g:02x}{b:02x}")
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let s = s.trim().strip_prefix('#').unwrap_or(s.trim());
        if s.len() != 6 || !s.is_ascii() {
            return None;
        }
        let byte = |i: usize| u8::from_str_radix(&s[i..i + 2], 16).ok();
        Some(Self::from_u8([byte(0)?, byte(2)?, byte(4)?]))
    }

    pub fn in_range(&self) -> bool {
        [self.r, self.g, self.b]
            .iter()
            .all(|c| (0.0..=1.0).contains(c))
    }

    pub fn to_lab(&self) -> LabColor {
        srgb_to_lab(*self)
    }

    pub fn to_hsv(&self) -> HsvColor {
        srgb_to_hsv(*self)
    }
}

impl fmt::Display for RgbColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r, g, b] = self.to_u8();
        write!(f, "{r},{g},{b}")
    }
}

impl HsvColor {
    /// Builds a color with hue wrapped into `[0, 360)` and `s`, `v` clamped.
    pub fn new(h: f64, s: f64, v: f64) -> Self {
        Self {
            h: wrap_degrees(h),
            s: s.clamp(0.0, 1.0),
            v: v.clamp(0.0, 1.0),
        }
    }

    pub fn to_rgb(&self) -> RgbColor {
        hsv_to_srgb(*self)
    }
}

impl LabColor {
    pub const fn new(l: f64, a: f64, b: f64) -> Self {
        Self { l, a, b }
    }

    /// Builds a color from lightness, chroma and hue angle (degrees).
    pub fn from_lch(l: f64, chroma: f64, hue_deg: f64) -> Self {
        let (s, c) = hue_deg.to_radians().sin_cos();
        Self::new(l, chroma * c, chroma * s)
    }

    pub fn chroma(&self) -> f64 {
        self.a.hypot(self.b)
    }

    /// CIELAB hue angle in degrees `[0, 360)`.
    pub fn hue(&self) -> f64 {
        wrap_degrees(self.b.atan2(self.a).to_degrees())
    }

    pub fn lerp(&self, other: &LabColor, t: f64) -> LabColor {
        LabColor::new(
            self.l + (other.l - self.l) * t,
            self.a + (other.a - self.a) * t,
            self.b + (other.b - self.b) * t,
        )
    }

    pub fn to_rgb(&self) -> Clamped<RgbColor> {
        lab_to_srgb(*self)
    }
}

/// Wraps an angle in degrees into `[0, 360)`.
pub fn wrap_degrees(h: f64) -> f64 {
    let w = h.rem_euclid(360.0);
    // rem_euclid can return 360.0 for tiny negative inputs
    if w >= 360.0 {
        0.0
    } else {
        w
    }
}

/// Shortest angular distance between two hues, in `[0, 180]`.
pub fn hue_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d)
}

// sRGB primaries, D65 white.
const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.412_456_4, 0.357_576_1, 0.180_437_5],
    [0.212_672_9, 0.715_152_2, 0.072_175_0],
    [0.019_333_9, 0.119_192_0, 0.950_304_1],
];

const XYZ_TO_RGB: [[f64; 3]; 3] = invert3(RGB_TO_XYZ);

const WHITE_XYZ: [f64; 3] = [
    RGB_TO_XYZ[0][0] + RGB_TO_XYZ[0][1] + RGB_TO_XYZ[0][2],
    RGB_TO_XYZ[1][0] + RGB_TO_XYZ[1][1] + RGB_TO_XYZ[1][2],
    RGB_TO_XYZ[2][0] + RGB_TO_XYZ[2][1] + RGB_TO_XYZ[2][2],
];

const LAB_EPSILON: f64 = 216.0 / 24389.0;
const LAB_KAPPA: f64 = 24389.0 / 27.0;

const fn invert3(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    let c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    let det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    [
        [
            c00 / det,
            (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det,
            (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det,
        ],
        [
            c01 / det,
            (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det,
            (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det,
        ],
        [
            c02 / det,
            (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det,
            (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det,
        ],
    ]
}

fn mul3(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// sRGB transfer function, encoded -> linear.
pub fn srgb_to_linear(c: f64) -> f64 {
    if c <= 0.040_45 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

/// sRGB transfer function, linear -> encoded.
pub fn linear_to_srgb(c: f64) -> f64 {
    if c <= 0.003_130_8 {
        c * 12.92
    } else {
        1.055 * c.powf(1.0 / 2.4) - 0.055
    }
}

fn lab_f(t: f64) -> f64 {
    if t > LAB_EPSILON {
        t.cbrt()
    } else {
        (LAB_KAPPA * t + 16.0) / 116.0
    }
}

fn lab_f_inv(f: f64) -> f64 {
    let t = f * f * f;
    if t > LAB_EPSILON {
        t
    } else {
        (116.0 * f - 16.0) / LAB_KAPPA
    }
}

pub fn srgb_to_lab(c: RgbColor) -> LabColor {
    let lin = [
        srgb_to_linear(c.r),
        srgb_to_linear(c.g),
        srgb_to_linear(c.b),
    ];
    let xyz = mul3(&RGB_TO_XYZ, lin);
    let fx = lab_f(xyz[0] / WHITE_XYZ[0]);
    let fy = lab_f(xyz[1] / WHITE_XYZ[1]);
    let fz = lab_f(xyz[2] / WHITE_XYZ[2]);
    LabColor::new(116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))
}

/// Unclamped sRGB channels of a Lab color; may fall outside `[0, 1]`.
pub fn lab_to_srgb_unclamped(c: LabColor) -> RgbColor {
    let fy = (c.l + 16.0) / 116.0;
    let fx = fy + c.a / 500.0;
    let fz = fy - c.b / 200.0;
    let xyz = [
        lab_f_inv(fx) * WHITE_XYZ[0],
        lab_f_inv(fy) * WHITE_XYZ[1],
        lab_f_inv(fz) * WHITE_XYZ[2],
    ];
    let [r, g, b] = mul3(&XYZ_TO_RGB, xyz);
    let enc = |x: f64| {
        if x < 0.0 {
            -linear_to_srgb(-x)
        } else {
            linear_to_srgb(x)
        }
    };
    RgbColor::new(enc(r), enc(g), enc(b))
}

/// Whether a Lab color maps inside the sRGB cube, allowing `tol` slack.
pub fn in_srgb_gamut(c: LabColor, tol: f64) -> bool {
    let rgb = lab_to_srgb_unclamped(c);
    [rgb.r, rgb.g, rgb.b]
        .iter()
        .all(|&x| x >= -tol && x <= 1.0 + tol)
}

/// Lab to sRGB; out-of-gamut channels are clamped and flagged.
pub fn lab_to_srgb(c: LabColor) -> Clamped<RgbColor> {
    let raw = lab_to_srgb_unclamped(c);
    let clamped = !raw.in_range();
    let value = RgbColor::new(
        raw.r.clamp(0.0, 1.0),
        raw.g.clamp(0.0, 1.0),
        raw.b.clamp(0.0, 1.0),
    );
    Clamped { value, clamped }
}

/// Hexcone HSV. A gray has hue 0 by convention.
pub fn srgb_to_hsv(c: RgbColor) -> HsvColor {
    let max = c.r.max(c.g).max(c.b);
    let min = c.r.min(c.g).min(c.b);
    let delta = max - min;
    if delta <= 0.0 {
        return HsvColor {
            h: 0.0,
            s: 0.0,
            v: max,
        };
    }
    let sector = if max == c.r {
        ((c.g - c.b) / delta).rem_euclid(6.0)
    } else if max == c.g {
        (c.b - c.r) / delta + 2.0
    } else {
        (c.r - c.g) / delta + 4.0
    };
    HsvColor {
        h: wrap_degrees(sector * 60.0),
        s: if max > 0.0 { delta / max } else { 0.0 },
        v: max,
    }
}

pub fn hsv_to_srgb(c: HsvColor) -> RgbColor {
    let h = wrap_degrees(c.h) / 60.0;
    let chroma = c.v * c.s;
    let min = c.v - chroma;
    let sector = h.floor();
    let frac = h - sector;
    let rising = min + chroma * frac;
    let falling = c.v - chroma * frac;
    let (r, g, b) = match sector as u8 {
        0 => (c.v, rising, min),
        1 => (falling, c.v, min),
        2 => (min, c.v, rising),
        3 => (min, falling, c.v),
        4 => (rising, min, c.v),
        _ => (c.v, min, falling),
    };
    RgbColor::new(r, g, b)
}

/// CIE76: Euclidean distance in CIELAB.
pub fn delta_e_76(c1: LabColor, c2: LabColor) -> f64 {
    let (dl, da, db) = (c1.l - c2.l, c1.a - c2.a, c1.b - c2.b);
    (dl * dl + da * da + db * db).sqrt()
}

/// CIEDE2000 with `kL = kC = kH = 1`.
pub fn delta_e_2000(c1: LabColor, c2: LabColor) -> f64 {
    const POW25_7: f64 = 6_103_515_625.0;

    let c_star_1 = c1.chroma();
    let c_star_2 = c2.chroma();
    let c_bar = (c_star_1 + c_star_2) / 2.0;
    let c_bar7 = c_bar.powi(7);
    let g = 0.5 * (1.0 - (c_bar7 / (c_bar7 + POW25_7)).sqrt());

    let a1 = (1.0 + g) * c1.a;
    let a2 = (1.0 + g) * c2.a;
    let cp1 = a1.hypot(c1.b);
    let cp2 = a2.hypot(c2.b);

    let hue = |a: f64, b: f64| {
        if a == 0.0 && b == 0.0 {
            0.0
        } else {
            b.atan2(a).to_degrees().rem_euclid(360.0)
        }
    };
    let hp1 = hue(a1, c1.b);
    let hp2 = hue(a2, c2.b);

    let dl = c2.l - c1.l;
    let dc = cp2 - cp1;
    let chroma_product = cp1 * cp2;
    let dh_angle = if chroma_product == 0.0 {
        0.0
    } else {
        let d = hp2 - hp1;
        if d > 180.0 {
            d - 360.0
        } else if d < -180.0 {
            d + 360.0
        } else {
            d
        }
    };
    let dh = 2.0 * chroma_product.sqrt() * (dh_angle.to_radians() / 2.0).sin();

    let l_bar = (c1.l + c2.l) / 2.0;
    let cp_bar = (cp1 + cp2) / 2.0;
    let hp_bar = if chroma_product == 0.0 {
        hp1 + hp2
    } else if (hp1 - hp2).abs() <= 180.0 {
        (hp1 + hp2) / 2.0
    } else if hp1 + hp2 < 360.0 {
        (hp1 + hp2 + 360.0) / 2.0
    } else {
        (hp1 + hp2 - 360.0) / 2.0
    };

    let t = 1.0 - 0.17 * (hp_bar - 30.0).to_radians().cos()
        + 0.24 * (2.0 * hp_bar).to_radians().cos()
        + 0.32 * (3.0 * hp_bar + 6.0).to_radians().cos()
        - 0.20 * (4.0 * hp_bar - 63.0).to_radians().cos();
    let d_theta = 30.0 * (-((hp_bar - 275.0) / 25.0).powi(2)).exp();
    let cp_bar7 = cp_bar.powi(7);
    let r_c = 2.0 * (cp_bar7 / (cp_bar7 + POW25_7)).sqrt();
    let l50 = (l_bar - 50.0).powi(2);
    let s_l = 1.0 + 0.015 * l50 / (20.0 + l50).sqrt();
    let s_c = 1.0 + 0.045 * cp_bar;
    let s_h = 1.0 + 0.015 * cp_bar * t;
    let r_t = -(2.0 * d_theta).to_radians().sin() * r_c;

    let tl = dl / s_l;
    let tc = dc / s_c;
    let th = dh / s_h;
    (tl * tl + tc * tc + th * th + r_t * tc * th).sqrt()
}

/// Which color-difference formula to report.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaE {
    #[default]
    De76,
    De2000,
}

impl DeltaE {
    pub fn between(&self, c1: LabColor, c2: LabColor) -> f64 {
        match self {
            DeltaE::De76 => delta_e_76(c1, c2),
            DeltaE::De2000 => delta_e_2000(c1, c2),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DeltaE::De76 => "de76",
            DeltaE::De2000 => "de2000",
        }
    }
}

impl std::str::FromStr for DeltaE {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "de76" | "cie76" | "76" => Ok(DeltaE::De76),
            "de2000" | "ciede2000" | "2000" => Ok(DeltaE::De2000),
            other => Err(crate::Error::UnsupportedFormat(format!(
                "unknown DeltaE metric `{other}`"
            ))),
        }
    }
}

use crate::color::{HsvColor, RgbColor};
use crate::{Error, Result};

use super::viridis_data::VIRIDIS;
use super::{ColormapTable, ScaleHint};

/// The canonical 256-stop Viridis table.
pub fn viridis_table() -> ColormapTable {
    let stops = VIRIDIS
        .iter()
        .map(|&[r, g, b]| RgbColor::new(r, g, b))
        .collect();
    ColormapTable::new("viridis", stops, ScaleHint::Linear).expect("embedded table is valid")
}

/// HSV hue sweep from blue (240°) down to red (0°) at full saturation and value.
pub fn rainbow_table(n: usize) -> Result<ColormapTable> {
    if n < 2 {
        return Err(Error::InvalidColormap(format!(
            "rainbow needs at least 2 stops, got {n}"
        )));
    }
    let stops = (0..n)
        .map(|i| {
            let h = 240.0 * (1.0 - i as f64 / (n - 1) as f64);
            HsvColor::new(h, 1.0, 1.0).to_rgb()
        })
        .collect();
    ColormapTable::new("rainbow", stops, ScaleHint::Linear)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viridis_endpoints() {
        let v = viridis_table();
        assert_eq!(v.len(), 256);
        assert_eq!(v.stops()[0].to_u8(), [68, 1, 84]);
        assert_eq!(v.stops()[255].to_u8(), [253, 231, 37]);
    }

    #[test]
    fn rainbow_endpoints() {
        let r = rainbow_table(2).unwrap();
        assert_eq!(
            r.stops(),
            &[RgbColor::new(0.0, 0.0, 1.0), RgbColor::new(1.0, 0.0, 0.0)]
        );
        let r = rainbow_table(5).unwrap();
        assert_eq!(r.stops()[2], RgbColor::new(0.0, 1.0, 0.0));
        assert!(rainbow_table(1).is_err());
    }
}

//! Colormap files.
//!
//! Two formats are supported:
//!
//! - native text: one `R,G,B` 8-bit triple per line (`#RRGGBB` lines are
//!   accepted on import, as are blank lines and `#` comments);
//! - structured JSON (`.json` / `.cmap`): `{name, variant, e_min, e_max,
//!   within_band_mode, scale_hint, bands, stops}`. OMC maps also carry their
//!   bands so they can be rebuilt exactly.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::color::RgbColor;
use crate::scinum::BandMode;
use crate::{Error, Result};

use super::{Colormap, ColormapTable, ExponentBand, OmcColormap, ScaleHint, Variant, RAMP_SAMPLES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Native,
    Json,
}

impl TableFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("txt" | "csv" | "rgb") => Ok(TableFormat::Native),
            Some("json" | "cmap") => Ok(TableFormat::Json),
            _ => Err(Error::UnsupportedFormat(format!(
                "cannot infer colormap format from `{}` (expected .txt/.csv/.rgb or .json/.cmap)",
                path.display()
            ))),
        }
    }
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "native" | "txt" | "rgb" => Ok(TableFormat::Native),
            "json" | "cmap" => Ok(TableFormat::Json),
            other => Err(Error::UnsupportedFormat(format!(
                "unknown table format `{other}`"
            ))),
        }
    }
}

/// On-disk layout of the structured format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColormapFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_min: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_max: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within_band_mode: Option<BandMode>,
    #[serde(default)]
    pub scale_hint: ScaleHint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bands: Option<Vec<ExponentBand>>,
    pub stops: Vec<[u8; 3]>,
}

impl ColormapFile {
    pub fn from_table(table: &ColormapTable) -> Self {
        Self {
            name: table.name().to_string(),
            variant: None,
            e_min: None,
            e_max: None,
            within_band_mode: None,
            scale_hint: table.scale_hint(),
            bands: None,
            stops: table.to_u8(),
        }
    }

    pub fn from_omc(cmap: &OmcColormap) -> Result<Self> {
        let table = cmap.sample_table(RAMP_SAMPLES * cmap.band_count())?;
        Ok(Self {
            variant: Some(cmap.variant()),
            e_min: Some(cmap.e_min()),
            e_max: Some(cmap.e_max()),
            within_band_mode: Some(cmap.mode()),
            bands: Some(cmap.bands().to_vec()),
            ..Self::from_table(&table)
        })
    }

    pub fn into_colormap(self) -> Result<Colormap> {
        match self.bands {
            Some(bands) => {
                let (Some(e_min), Some(e_max)) = (self.e_min, self.e_max) else {
                    return Err(Error::InvalidColormap(
                        "a colormap with bands needs e_min and e_max".into(),
                    ));
                };
                OmcColormap::from_bands(
                    e_min,
                    e_max,
                    bands,
                    self.variant.unwrap_or_default(),
                    self.within_band_mode.unwrap_or_default(),
                )
                .map(Colormap::Omc)
            }
            None => {
                ColormapTable::from_u8(self.name, &self.stops, self.scale_hint).map(Colormap::Table)
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("colormap file serializes");
        s.push('\n');
        s
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(bytes).map_err(|e| Error::io(path, e))
}

fn table_name(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("imported")
        .to_string()
}

/// Parses native text into 8-bit stops.
pub(crate) fn parse_native(text: &str, path: &Path) -> Result<Vec<[u8; 3]>> {
    let mut stops = Vec::new();
    let mut last_line = 0u64;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx as u64 + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: line_no,
            message,
        };
        if line.starts_with('#') {
            match RgbColor::from_hex(line) {
                Some(c) if line.len() == 7 => stops.push(c.to_u8()),
                _ => continue,
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(err(format!("expected `R,G,B`, found `{line}`")));
        }
        let mut rgb = [0u8; 3];
        for (slot, field) in rgb.iter_mut().zip(&fields) {
            *slot = field
                .parse::<u8>()
                .map_err(|_| err(format!("`{field}` is not an integer in 0..=255")))?;
        }
        stops.push(rgb);
    }
    if stops.len() < 2 {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: last_line,
            message: format!("a colormap needs at least 2 stops, found {}", stops.len()),
        });
    }
    Ok(stops)
}

fn parse_json(text: &str, path: &Path) -> Result<ColormapFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line() as u64,
        message: e.to_string(),
    })
}

/// Writes a table; the native format stores the 8-bit view of each stop.
pub fn export_table(table: &ColormapTable, path: &Path, format: TableFormat) -> Result<()> {
    let text = match format {
        TableFormat::Native => table
            .to_u8()
            .iter()
            .map(|[r, g, b]| format!("{r},{g},{b}\n"))
            .collect::<String>(),
        TableFormat::Json => ColormapFile::from_table(table).to_json(),
    };
    write_bytes(path, text.as_bytes())
}

/// Reads a table in the format implied by the file extension. Structured
/// files that describe an OMC map yield their stored stops.
pub fn import_table(path: &Path) -> Result<ColormapTable> {
    let text = read_to_string(path)?;
    match TableFormat::from_path(path)? {
        TableFormat::Native => ColormapTable::from_u8(
            table_name(path),
            &parse_native(&text, path)?,
            ScaleHint::Linear,
        ),
        TableFormat::Json => {
            let file = parse_json(&text, path)?;
            if file.stops.len() < 2 {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: 1,
                    message: format!(
                        "a colormap needs at least 2 stops, found {}",
                        file.stops.len()
                    ),
                });
            }
            ColormapTable::from_u8(file.name, &file.stops, file.scale_hint)
        }
    }
}

/// Writes either kind of colormap. OMC maps always go to the structured format.
pub fn save_colormap(cmap: &Colormap, path: &Path) -> Result<()> {
    match cmap {
        Colormap::Omc(c) => write_bytes(path, ColormapFile::from_omc(c)?.to_json().as_bytes()),
        Colormap::Table(t) => export_table(t, path, TableFormat::from_path(path)?),
    }
}

/// Reads a colormap file; structured files with bands come back as OMC maps.
pub fn load_colormap(path: &Path) -> Result<Colormap> {
    match TableFormat::from_path(path)? {
        TableFormat::Native => import_table(path).map(Colormap::Table),
        TableFormat::Json => parse_json(&read_to_string(path)?, path)?.into_colormap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colormap::{build_omc, viridis_table, BuildOptions};

    #[test]
    fn native_parsing() {
        let p = Path::new("x.txt");
        let stops = parse_native("# comment\n0,0,0\n\n 255, 128 ,1\n#ff0000\n", p).unwrap();
        assert_eq!(stops, vec![[0, 0, 0], [255, 128, 1], [255, 0, 0]]);

        match parse_native("0,0,0\n", p) {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_native("0,0,0\n1,2\n", p) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_native("0,0,0\n1,2,256\n", p) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            TableFormat::from_path(Path::new("a.txt")).unwrap(),
            TableFormat::Native
        );
        assert_eq!(
            TableFormat::from_path(Path::new("a.CMAP")).unwrap(),
            TableFormat::Json
        );
        assert!(matches!(
            TableFormat::from_path(Path::new("a.png")),
            Err(Error::UnsupportedFormat(_))
        ));
        assert!(matches!(
            TableFormat::from_path(Path::new("noext")),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn omc_survives_structured_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("omc.cmap");
        let omc = build_omc(-8, -2, &BuildOptions::default()).unwrap();
        save_colormap(&Colormap::Omc(omc.clone()), &path).unwrap();
        match load_colormap(&path).unwrap() {
            Colormap::Omc(back) => {
                assert_eq!(back.bands(), omc.bands());
                assert_eq!(back.variant(), omc.variant());
                assert_eq!(back.mode(), omc.mode());
            }
            Colormap::Table(_) => panic!("bands were dropped"),
        }
        let table = import_table(&path).unwrap();
        assert_eq!(table.len(), 64 * 7);
    }

    #[test]
    fn viridis_json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.json");
        let v = viridis_table();
        export_table(&v, &path, TableFormat::Json).unwrap();
        let back = import_table(&path).unwrap();
        assert_eq!(back, v.quantized());
        assert_eq!(back.name(), "viridis");
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            import_table(Path::new("/nonexistent/x.txt")),
            Err(Error::Io { .. })
        ));
    }
}

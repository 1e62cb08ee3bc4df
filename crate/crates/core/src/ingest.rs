//! Time-height series read from delimited text.
//!
//! Rows whose value is missing, non-finite or non-positive are kept but
//! masked, as are rows whose coordinates are missing or outside the
//! configured axis ranges. Masked rows never take part in range statistics.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use crate::scinum::decompose;
use crate::{Error, Result};

/// Picks a column by header name or zero-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Name(String),
    Index(usize),
}

impl ColumnSelector {
    fn resolve(&self, header: Option<&[String]>, fallback: usize) -> Option<usize> {
        match (self, header) {
            (ColumnSelector::Index(i), _) => Some(*i),
            (ColumnSelector::Name(name), Some(h)) => h
                .iter()
                .position(|c| c.trim().eq_ignore_ascii_case(name.trim())),
            (ColumnSelector::Name(_), None) => Some(fallback),
        }
    }

    fn describe(&self) -> String {
        match self {
            ColumnSelector::Name(n) => format!("`{n}`"),
            ColumnSelector::Index(i) => format!("#{i}"),
        }
    }
}

impl From<&str> for ColumnSelector {
    /// Digits select by position, anything else by name.
    fn from(s: &str) -> Self {
        match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvOptions {
    pub delimiter: u8,
    /// Lines starting with this byte are skipped.
    pub comment: Option<u8>,
    pub time_column: ColumnSelector,
    pub height_column: ColumnSelector,
    pub value_column: ColumnSelector,
    /// Field contents (after trimming) that mean "no data".
    pub missing_tokens: Vec<String>,
    /// Accepted time interval in hours.
    pub time_range: (f64, f64),
    /// Accepted height interval in kilometers.
    pub height_range: (f64, f64),
    pub units: Option<String>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            comment: Some(b'#'),
            time_column: ColumnSelector::Name("time".into()),
            height_column: ColumnSelector::Name("height".into()),
            value_column: ColumnSelector::Name("value".into()),
            missing_tokens: ["", "NaN", "nan", "-999"].map(String::from).to_vec(),
            time_range: (0.0, 24.0),
            height_range: (0.0, 12.0),
            units: None,
        }
    }
}

/// Why a row was masked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MaskReason {
    Missing,
    NonFinite,
    NonPositive,
    MissingCoordinate,
    CoordinateOutOfRange,
}

impl MaskReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            MaskReason::Missing => "missing",
            MaskReason::NonFinite => "non-finite",
            MaskReason::NonPositive => "non-positive",
            MaskReason::MissingCoordinate => "missing-coordinate",
            MaskReason::CoordinateOutOfRange => "coordinate-out-of-range",
        }
    }
}

impl fmt::Display for MaskReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Number of masked rows per reason.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MaskCounts {
    pub missing: usize,
    pub non_finite: usize,
    pub non_positive: usize,
    pub missing_coordinate: usize,
    pub coordinate_out_of_range: usize,
}

impl MaskCounts {
    pub fn total(&self) -> usize {
        self.missing
            + self.non_finite
            + self.non_positive
            + self.missing_coordinate
            + self.coordinate_out_of_range
    }

    fn add(&mut self, reason: MaskReason) {
        match reason {
            MaskReason::Missing => self.missing += 1,
            MaskReason::NonFinite => self.non_finite += 1,
            MaskReason::NonPositive => self.non_positive += 1,
            MaskReason::MissingCoordinate => self.missing_coordinate += 1,
            MaskReason::CoordinateOutOfRange => self.coordinate_out_of_range += 1,
        }
    }
}

impl fmt::Display for MaskCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "masked {} (missing {}, non-finite {}, non-positive {}, missing-coordinate {}, out-of-range {})",
            self.total(),
            self.missing,
            self.non_finite,
            self.non_positive,
            self.missing_coordinate,
            self.coordinate_out_of_range
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeriesMetadata {
    pub source: String,
    pub variable: String,
    pub units: Option<String>,
}

/// Parallel arrays of time (h), height (km) and value, with a per-row mask.
/// Missing numbers are stored as NaN.
#[derive(Debug, Clone)]
pub struct TimeHeightSeries {
    time: Vec<f64>,
    height: Vec<f64>,
    value: Vec<f64>,
    mask: Vec<Option<MaskReason>>,
    metadata: SeriesMetadata,
    value_range: Option<(f64, f64)>,
}

/// Series compare equal when every number is bit-identical, so NaN rows
/// match themselves.
impl PartialEq for TimeHeightSeries {
    fn eq(&self, other: &Self) -> bool {
        fn same(a: &[f64], b: &[f64]) -> bool {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
        }
        same(&self.time, &other.time)
            && same(&self.height, &other.height)
            && same(&self.value, &other.value)
            && self.mask == other.mask
            && self.metadata == other.metadata
            && self.value_range == other.value_range
    }
}

fn classify(t: f64, h: f64, v: f64, options: &CsvOptions) -> Option<MaskReason> {
    let inside = |x: f64, (lo, hi): (f64, f64)| x >= lo && x <= hi;
    if t.is_nan() || h.is_nan() {
        Some(MaskReason::MissingCoordinate)
    } else if !inside(t, options.time_range) || !inside(h, options.height_range) {
        Some(MaskReason::CoordinateOutOfRange)
    } else if v.is_nan() {
        Some(MaskReason::Missing)
    } else if !v.is_finite() {
        Some(MaskReason::NonFinite)
    } else if v <= 0.0 {
        Some(MaskReason::NonPositive)
    } else {
        None
    }
}

impl TimeHeightSeries {
    /// Builds a series from raw columns, masking rows by the rules of
    /// `options` (NaN means missing). Errors with `NoValidRows` when no row
    /// survives.
    pub fn from_columns(
        time: Vec<f64>,
        height: Vec<f64>,
        value: Vec<f64>,
        metadata: SeriesMetadata,
        options: &CsvOptions,
    ) -> Result<Self> {
        assert!(
            time.len() == height.len() && time.len() == value.len(),
            "column lengths differ"
        );
        let mask: Vec<Option<MaskReason>> = (0..time.len())
            .map(|i| classify(time[i], height[i], value[i], options))
            .collect();
        let value_range = value
            .iter()
            .zip(&mask)
            .filter(|(_, m)| m.is_none())
            .map(|(&v, _)| v)
            .fold(None, |acc: Option<(f64, f64)>, v| match acc {
                None => Some((v, v)),
                Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
            });
        if value_range.is_none() {
            return Err(Error::NoValidRows(format!(
                "{}: {} rows, none usable",
                metadata.source,
                time.len()
            )));
        }
        Ok(Self {
            time,
            height,
            value,
            mask,
            metadata,
            value_range,
        })
    }

    pub fn len(&self) -> usize {
        self.time.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time.is_empty()
    }

    pub fn time(&self) -> &[f64] {
        &self.time
    }

    pub fn height(&self) -> &[f64] {
        &self.height
    }

    pub fn value(&self) -> &[f64] {
        &self.value
    }

    pub fn mask(&self) -> &[Option<MaskReason>] {
        &self.mask
    }

    pub fn metadata(&self) -> &SeriesMetadata {
        &self.metadata
    }

    /// `(vmin, vmax)` over unmasked rows.
    pub fn value_range(&self) -> (f64, f64) {
        self.value_range.expect("a series always has a valid row")
    }

    pub fn mask_counts(&self) -> MaskCounts {
        let mut c = MaskCounts::default();
        for r in self.mask.iter().flatten() {
            c.add(*r);
        }
        c
    }

    pub fn valid_count(&self) -> usize {
        self.mask.iter().filter(|m| m.is_none()).count()
    }

    /// `(time, height, value)` of every unmasked row, in data order.
    pub fn valid_points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.len())
            .filter(|&i| self.mask[i].is_none())
            .map(|i| (self.time[i], self.height[i], self.value[i]))
    }

    /// Smallest and largest exponent of the unmasked values.
    pub fn observed_exponent_span(&self) -> Result<(i32, i32)> {
        let (lo, hi) = self.value_range();
        Ok((decompose(lo)?.exponent, decompose(hi)?.exponent))
    }

    /// `time,height,value` CSV; missing numbers are written as `NaN`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.len() * 24);
        out.push_str("time,height,value\n");
        for i in 0..self.len() {
            let _ = writeln!(out, "{},{},{}", self.time[i], self.height[i], self.value[i]);
        }
        out
    }
}

/// Free-function form of [`TimeHeightSeries::observed_exponent_span`].
pub fn observed_exponent_span(series: &TimeHeightSeries) -> Result<(i32, i32)> {
    series.observed_exponent_span()
}

enum Field {
    Number(f64),
    Missing,
}

fn parse_field(raw: &str, options: &CsvOptions) -> Option<Field> {
    let s = raw.trim();
    if options.missing_tokens.iter().any(|t| t == s) {
        return Some(Field::Missing);
    }
    s.parse::<f64>().ok().map(Field::Number)
}

fn is_numeric_row(record: &csv::StringRecord, options: &CsvOptions) -> bool {
    record.iter().all(|f| parse_field(f, options).is_some())
}

/// Parses CSV text. `source` names the input in metadata and errors.
pub fn parse_csv_str(text: &str, source: &str, options: &CsvOptions) -> Result<TimeHeightSeries> {
    let path = Path::new(source);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line());
        Error::Parse {
            path: path.to_path_buf(),
            line,
            message: e.to_string(),
        }
    };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .comment(options.comment)
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let first = match records.next() {
        Some(r) => r.map_err(csv_err)?,
        None => {
            return Err(Error::NoValidRows(format!("{source}: no rows")));
        }
    };

    let selectors = [
        &options.time_column,
        &options.height_column,
        &options.value_column,
    ];
    let header: Option<Vec<String>> = if is_numeric_row(&first, options) {
        None
    } else {
        Some(first.iter().map(str::to_string).collect())
    };
    let mut columns = [0usize; 3];
    for (k, sel) in selectors.iter().enumerate() {
        columns[k] = sel.resolve(header.as_deref(), k).ok_or_else(|| {
            Error::Schema(format!(
                "{source}: required column {} not found in header `{}`",
                sel.describe(),
                first.iter().collect::<Vec<_>>().join(",")
            ))
        })?;
    }
    let variable = match &header {
        Some(h) => h.get(columns[2]).cloned().unwrap_or_default(),
        None => String::from("value"),
    };

    let column_label = |col: usize| match header.as_ref().and_then(|h| h.get(col)) {
        Some(name) => name.trim().to_string(),
        None => format!("#{}", col + 1),
    };

    let mut time = Vec::new();
    let mut height = Vec::new();
    let mut value = Vec::new();
    let data_rows = header
        .is_none()
        .then_some(Ok(first))
        .into_iter()
        .chain(records);
    for record in data_rows {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.trim().is_empty()) && record.len() <= 1 {
            continue;
        }
        let mut nums = [f64::NAN; 3];
        for (k, &col) in columns.iter().enumerate() {
            let raw = record.get(col).ok_or_else(|| Error::ParseField {
                path: path.to_path_buf(),
                line,
                column: column_label(col),
                message: format!(
                    "row has {} fields, column {} is absent",
                    record.len(),
                    col + 1
                ),
            })?;
            nums[k] = match parse_field(raw, options) {
                Some(Field::Number(x)) => x,
                Some(Field::Missing) => f64::NAN,
                None => {
                    return Err(Error::ParseField {
                        path: path.to_path_buf(),
                        line,
                        column: column_label(col),
                        message: format!("`{}` is not a number", raw.trim()),
                    })
                }
            };
        }
        time.push(nums[0]);
        height.push(nums[1]);
        value.push(nums[2]);
    }

    let metadata = SeriesMetadata {
        source: source.to_string(),
        variable,
        units: options.units.clone(),
    };
    TimeHeightSeries::from_columns(time, height, value, metadata, options)
}

/// Reads and parses a CSV file.
pub fn parse_csv(path: &Path, options: &CsvOptions) -> Result<TimeHeightSeries> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv_str(&text, &path.display().to_string(), options)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<TimeHeightSeries> {
        parse_csv_str(text, "test.csv", &CsvOptions::default())
    }

    #[test]
    fn nan_row_is_masked() {
        let s = parse("time,height,value\n1,2,1e-5\n2,3,NaN\n3,4,2e-4\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.mask_counts().total(), 1);
        assert_eq!(s.mask()[1], Some(MaskReason::Missing));
        assert_eq!(s.value_range(), (1e-5, 2e-4));
        assert_eq!(s.metadata().variable, "value");
    }

    #[test]
    fn negative_and_zero_values_are_non_positive() {
        let s = parse("time,height,value\n1,2,-3e-5\n2,3,0\n3,4,2e-4\n").unwrap();
        assert_eq!(s.mask()[0], Some(MaskReason::NonPositive));
        assert_eq!(s.mask()[1], Some(MaskReason::NonPositive));
        assert_eq!(s.mask_counts().non_positive, 2);
    }

    #[test]
    fn other_mask_reasons() {
        let s = parse("time,height,value\n,2,1e-5\n25,3,1e-5\n1,1,inf\n1,1,-999\n1,1,1\n").unwrap();
        let reasons: Vec<_> = s.mask().to_vec();
        assert_eq!(
            reasons,
            vec![
                Some(MaskReason::MissingCoordinate),
                Some(MaskReason::CoordinateOutOfRange),
                Some(MaskReason::NonFinite),
                Some(MaskReason::Missing),
                None
            ]
        );
    }

    #[test]
    fn header_only_and_empty_inputs() {
        assert!(matches!(
            parse("time,height,value\n"),
            Err(Error::NoValidRows(_))
        ));
        assert!(matches!(parse(""), Err(Error::NoValidRows(_))));
        assert!(matches!(
            parse("time,height,value\n1,1,NaN\n"),
            Err(Error::NoValidRows(_))
        ));
    }

    #[test]
    fn schema_and_field_errors() {
        assert!(matches!(parse("t,h,iwc\n1,1,1\n"), Err(Error::Schema(_))));
        match parse("time,height,value\n1,1,1\n2,x,1\n") {
            Err(Error::ParseField {
                line: 3, column, ..
            }) => assert_eq!(column, "height"),
            other => panic!("unexpected {other:?}"),
        }
        match parse("time,height,value\n1,1\n") {
            Err(Error::ParseField {
                line: 2, column, ..
            }) => assert_eq!(column, "value"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn column_selection() {
        let s = parse("value,height,time\n1e-3,5,10\n").unwrap();
        assert_eq!(s.time(), &[10.0]);
        assert_eq!(s.value(), &[1e-3]);

        let headerless = parse("10,5,1e-3\n11,6,2e-3\n").unwrap();
        assert_eq!(headerless.len(), 2);
        assert_eq!(headerless.time(), &[10.0, 11.0]);

        let opts = CsvOptions {
            delimiter: b';',
            value_column: ColumnSelector::from("iwc"),
            time_column: ColumnSelector::from("0"),
            ..CsvOptions::default()
        };
        let s = parse_csv_str("hour;height;iwc\n3;4;5e-6\n", "x", &opts).unwrap();
        assert_eq!((s.time()[0], s.height()[0], s.value()[0]), (3.0, 4.0, 5e-6));
        assert_eq!(s.metadata().variable, "iwc");
    }

    #[test]
    fn exponent_span() {
        let s = parse("time,height,value\n1,1,2e-8\n2,2,5e-3\n").unwrap();
        assert_eq!(s.observed_exponent_span().unwrap(), (-8, -3));
        let s = parse("time,height,value\n1,1,1.0\n").unwrap();
        assert_eq!(s.observed_exponent_span().unwrap(), (0, 0));
        let s = parse("time,height,value\n1,1,2e-8\n2,2,-5\n3,3,NaN\n").unwrap();
        assert_eq!(s.observed_exponent_span().unwrap(), (-8, -8));
    }

    #[test]
    fn csv_round_trip_is_identical() {
        let s = parse("time,height,value\n1.5,2,1e-5\n2,3,NaN\n3,4,-2\n").unwrap();
        let again = parse(&s.to_csv()).unwrap();
        assert_eq!(s.time(), again.time());
        assert_eq!(s.mask(), again.mask());
        assert_eq!(parse(&s.to_csv()).unwrap(), again);
    }
}

use std::path::PathBuf;

use omc_core::ingest::{parse_csv, CsvOptions, MaskCounts, MaskReason};
use omc_core::Error;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/ingest")
        .join(name)
}

#[test]
fn missing_tokens_are_masked() {
    let s = parse_csv(&fixture("nan_tokens.csv"), &CsvOptions::default()).unwrap();
    assert_eq!(s.len(), 8);
    assert_eq!(
        s.mask_counts(),
        MaskCounts {
            missing: 4,
            ..MaskCounts::default()
        }
    );
    assert_eq!(s.observed_exponent_span().unwrap(), (-8, -3));
    assert_eq!(s.value_range(), (1.1e-8, 2.0e-3));
}

#[test]
fn negative_values_are_masked() {
    let s = parse_csv(&fixture("negative_values.csv"), &CsvOptions::default()).unwrap();
    assert_eq!(s.len(), 6);
    assert_eq!(s.mask_counts().non_positive, 3);
    assert_eq!(s.mask_counts().total(), 3);
    assert_eq!(s.mask()[1], Some(MaskReason::NonPositive));
    assert_eq!(s.observed_exponent_span().unwrap(), (-7, -3));
}

#[test]
fn header_only_has_no_valid_rows() {
    let err = parse_csv(&fixture("header_only.csv"), &CsvOptions::default()).unwrap_err();
    assert!(matches!(err, Error::NoValidRows(_)), "{err}");
}

#[test]
fn delimiter_order_and_coordinates() {
    let opts = CsvOptions {
        delimiter: b';',
        ..CsvOptions::default()
    };
    let s = parse_csv(&fixture("mixed_reasons.csv"), &opts).unwrap();
    assert_eq!(s.len(), 6);
    assert_eq!(
        s.mask().to_vec(),
        vec![
            None,
            Some(MaskReason::NonFinite),
            Some(MaskReason::CoordinateOutOfRange),
            Some(MaskReason::MissingCoordinate),
            Some(MaskReason::CoordinateOutOfRange),
            None,
        ]
    );
    assert_eq!(s.observed_exponent_span().unwrap(), (-7, -6));
}

#[test]
fn parsing_is_idempotent() {
    for name in ["nan_tokens.csv", "negative_values.csv"] {
        let a = parse_csv(&fixture(name), &CsvOptions::default()).unwrap();
        let b = parse_csv(&fixture(name), &CsvOptions::default()).unwrap();
        assert_eq!(a, b);
    }
}

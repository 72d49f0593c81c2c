use drinfeld_ut::report::{parse_csv, parse_json, render_csv, render_json, scan_reports, CSV_HEADER};
use drinfeld_ut::{block_reports, CuspidalMode, Level, TMatrix, WeightParams, XPoly};
use proptest::prelude::*;

const FIELDS: [&str; 15] = [
    "q",
    "p",
    "r",
    "k",
    "mode",
    "level",
    "residue",
    "dim",
    "indices",
    "entries",
    "char_poly",
    "min_poly",
    "diagonalizable",
    "gamma0_tagged",
    "witness",
];

#[test]
fn json_schema_is_fixed() {
    let reports = scan_reports(4, 2, 9, CuspidalMode::Double, Level::Gamma).unwrap();
    let v: serde_json::Value = serde_json::from_str(&render_json(&reports)).unwrap();
    for obj in v.as_array().unwrap() {
        let keys: Vec<&str> = obj.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected = FIELDS.to_vec();
        expected.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, expected);
    }
}

#[test]
fn report_strings_parse_back_to_the_block() {
    let params = WeightParams::for_q(9, 20, CuspidalMode::Single).unwrap();
    for r in block_reports(&params, Level::Gamma1).unwrap() {
        let m = TMatrix::parse(&r.matrix_string(), 3).unwrap();
        assert_eq!(m.dim() as u64, r.dim);
        let cp = XPoly::parse(&r.char_poly, 3).unwrap();
        assert_eq!(cp.to_string(), r.char_poly);
        assert_eq!(cp.degree(), Some(r.dim as usize));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn json_and_csv_round_trip(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), k in 2u64..14,
                               double in any::<bool>(), gamma in any::<bool>()) {
        let mode = if double { CuspidalMode::Double } else { CuspidalMode::Single };
        let level = if gamma { Level::Gamma } else { Level::Gamma1 };
        let reports = block_reports(&WeightParams::for_q(q, k, mode).unwrap(), level).unwrap();
        prop_assert_eq!(parse_json(&render_json(&reports)).unwrap(), reports.clone());
        let csv = render_csv(&reports);
        let rows = parse_csv(&csv).unwrap();
        prop_assert_eq!(rows.len(), reports.len());
        for (row, r) in rows.iter().zip(&reports) {
            prop_assert_eq!(row, &(r.q, r.k, r.residue, r.dim, r.char_poly.clone(), r.min_poly.clone(), r.diagonalizable));
        }
        for line in csv.lines() {
            let mut rd = csv::ReaderBuilder::new().has_headers(false).from_reader(line.as_bytes());
            let rec = rd.records().next().unwrap().unwrap();
            prop_assert_eq!(rec.len(), CSV_HEADER.len());
        }
    }
}

mod common;

use pwidth::ingest;
use pwidth::width::{p_width, table1_report, Method, Source, WidthOptions};
use pwidth::Error;

const A5: &str = include_str!("golden/a5.ctbl");
const PSL28: &str = include_str!("golden/psl2_8.ctbl");

#[test]
fn computed_tables_match_golden_files() {
    for (spec, golden) in [("an:5", A5), ("psl:2:8", PSL28)] {
        let (_, _, t) = common::full(spec);
        assert_eq!(ingest::serialize(&t), golden, "{spec}");
        assert_eq!(ingest::serialize(&ingest::parse(golden).unwrap()), golden);
    }
}

#[test]
fn ingested_tables_give_the_same_certificates() {
    for (spec, golden, primes) in [("an:5", A5, &[3u64, 5][..]), ("psl:2:8", PSL28, &[3, 7])] {
        let (_, _, computed) = common::full(spec);
        let loaded = ingest::parse(golden).unwrap();
        for &p in primes {
            let opts = WidthOptions::new(Method::Characters);
            let a = p_width(Source::table(&computed), p, &opts).unwrap();
            let b = p_width(Source::table(&loaded), p, &opts).unwrap();
            assert_eq!(a, b, "{spec} p = {p}");
            assert_eq!(table1_report(&computed, p).unwrap(), table1_report(&loaded, p).unwrap());
        }
    }
    let r = table1_report(&ingest::parse(PSL28).unwrap(), 3).unwrap();
    assert_eq!(r.classes, vec!["2A"]);
}

#[test]
fn tampered_class_size_breaks_the_class_equation() {
    let bad = A5.replace("class 2A size 15", "class 2A size 14");
    match ingest::parse(&bad) {
        Err(Error::TableValidation { relation, .. }) => assert_eq!(relation, "class equation"),
        other => panic!("unexpected {other:?}"),
    }
    // Still parses without validation.
    assert!(ingest::parse_unchecked(&bad).is_ok());
}

#[test]
fn tampered_value_breaks_orthogonality() {
    let bad = A5.replace("irr 4@1;0@1;1@1;-1@1;-1@1", "irr 4@1;0@1;1@1;-1@1;1@1");
    assert!(matches!(ingest::parse(&bad), Err(Error::TableValidation { .. })));
}

#[test]
fn syntax_errors_carry_positions() {
    assert!(matches!(ingest::parse(""), Err(Error::TableSyntax { line: 1, .. })));
    let bad = A5.replace("class 2A size 15", "class 2A size x5");
    assert!(matches!(ingest::parse(&bad), Err(Error::TableSyntax { line: 6, column: 15, .. })));
    let bad = A5.replace("inv 4", "inv 9");
    assert!(matches!(ingest::parse(&bad), Err(Error::TableSyntax { line: 8, .. })));
    let bad = format!("{A5}irr 1@1\n");
    assert!(matches!(ingest::parse(&bad), Err(Error::TableSyntax { line: 15, column: 1, .. })));
    let bad = A5.replace("0,0,-1,-1@5;1,0,1,1@5\nirr 3", "0,0,-1@5;1,0,1,1@5\nirr 3");
    assert!(matches!(ingest::parse(&bad), Err(Error::TableSyntax { line: 11, .. })));
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let commented = format!("# exported table\n\n{}", A5.replace("classes 5\n", "classes 5\n\n# classes\n"));
    assert_eq!(ingest::serialize(&ingest::parse(&commented).unwrap()), A5);
}

#[test]
fn missing_power_maps_are_reported() {
    let stripped: String = A5
        .lines()
        .map(|l| match l.find(" pow 5:") {
            Some(i) if l.starts_with("class") => l[..i].to_string(),
            _ => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let t = ingest::parse(&stripped).unwrap();
    assert_eq!(table1_report(&t, 5), Err(Error::MissingPowerMap(5)));
}

#[test]
fn directory_check_matches_rows_by_group_name() {
    use pwidth::verify::check_ingested;
    let dir = std::env::temp_dir().join(format!("pwidth-ingest-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for spec in ["m11", "m12"] {
        let (_, _, t) = common::full(spec);
        ingest::write_table(&dir.join(format!("{spec}.ctbl")), &t).unwrap();
    }
    let ok = check_ingested(&dir).unwrap();
    assert_eq!(ok, "2 tables, every class in the square");

    // A relabelled table whose only exception at 3 is 2A passes the Co3 row
    // and fails the HS row.
    std::fs::write(dir.join("x.ctbl"), PSL28.replace("group psl:2:8", "group Co3")).unwrap();
    assert_eq!(check_ingested(&dir).unwrap(), "3 tables; Co3/3: 2A");
    std::fs::write(dir.join("x.ctbl"), PSL28.replace("group psl:2:8", "group HS")).unwrap();
    let err = check_ingested(&dir).unwrap_err();
    assert!(err.contains("HS p=3"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

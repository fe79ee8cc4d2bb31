use mdtk::catalog::{builtin, builtin_catalog, from_json, load, save, to_json, Source};
use mdtk::construct::ising;

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("mdtk-persistence-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn every_builtin_survives_a_file_round_trip() {
    for e in builtin_catalog() {
        let path = scratch(&format!("{}.json", e.name));
        save(&e.datum, &e.name, &path).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back.source, Source::File);
        assert_eq!(back.name, e.name);
        assert_eq!(back.datum, e.datum, "{}", e.name);
        let again = scratch(&format!("{}-again.json", e.name));
        save(&back.datum, &back.name, &again).unwrap();
        assert_eq!(
            std::fs::read(&path).unwrap(),
            std::fs::read(&again).unwrap()
        );
    }
}

// ζ = ζ₁₆, ε = 1: d = ζ² + ζ⁻² = ζ₈ - ζ₈³ and T = (1, -1, ζ⁻¹)
const HAND_ISING: &str = r#"{
  "name": "ising by hand",
  "labels": ["1", "delta", "X"],
  "S": [
    [{"n": 1, "c": [["1", "1"]]}, {"n": 1, "c": [["1", "1"]]}, {"n": 8, "c": [["0", "1"], ["1", "1"], ["0", "1"], ["-1", "1"]]}],
    [{"n": 1, "c": [["1", "1"]]}, {"n": 1, "c": [["1", "1"]]}, {"n": 8, "c": [["0", "1"], ["-1", "1"], ["0", "1"], ["1", "1"]]}],
    [{"n": 8, "c": [["0", "1"], ["1", "1"], ["0", "1"], ["-1", "1"]]}, {"n": 8, "c": [["0", "1"], ["-1", "1"], ["0", "1"], ["1", "1"]]}, {"n": 1, "c": [["0", "1"]]}]
  ],
  "T": [{"m": 1, "k": 0}, {"m": 2, "k": 1}, {"m": 16, "k": 15}]
}"#;

#[test]
fn hand_written_ising_matches_the_builtin() {
    let e = from_json(HAND_ISING).unwrap();
    assert_eq!(e.datum, ising(1, 1).unwrap());
    assert!(e.datum.verify().all_passed());
}

fn expect_parse_error(text: &str, needle: &str) {
    let err = from_json(text).unwrap_err().to_string();
    assert!(err.contains(needle), "{err:?} lacks {needle:?}");
}

#[test]
fn structural_errors_are_descriptive() {
    let asym = HAND_ISING.replacen(
        r#"[["0", "1"], ["-1", "1"], ["0", "1"], ["1", "1"]]}, {"n": 1, "c": [["0", "1"]]}"#,
        r#"[["0", "1"], ["1", "1"], ["0", "1"], ["-1", "1"]]}, {"n": 1, "c": [["0", "1"]]}"#,
        1,
    );
    expect_parse_error(&asym, "not symmetric");
    let short = HAND_ISING.replacen(
        r#"{"n": 8, "c": [["0", "1"], ["1", "1"], ["0", "1"], ["-1", "1"]]}"#,
        r#"{"n": 8, "c": [["0", "1"], ["1", "1"]]}"#,
        1,
    );
    expect_parse_error(&short, "coefficient");
    expect_parse_error(
        &HAND_ISING.replacen(r#""name""#, r#""nom""#, 1),
        "unknown field",
    );
    expect_parse_error(
        &HAND_ISING.replacen(r#"{"m": 1, "k": 0}"#, r#"{"m": 2, "k": 1}"#, 1),
        "unit normalization",
    );
    expect_parse_error(
        &HAND_ISING.replacen(
            r#""labels": ["1", "delta", "X"]"#,
            r#""labels": ["1", "X"]"#,
            1,
        ),
        "shape",
    );
    expect_parse_error("42", "invalid type");
}

#[test]
fn builtin_lookup() {
    assert!(builtin("fibonacci-j1").is_some());
    assert!(builtin("fibonacci-j5").is_none());
    let fib = builtin("fibonacci-j1").unwrap();
    let text = to_json(&fib.name, &fib.datum, &fib.notes);
    assert!(text.contains(r#""notes""#));
    assert_eq!(from_json(&text).unwrap().notes, fib.notes);
}

#[test]
fn metric_groups_are_validated_on_decode() {
    use mdtk::construct::MetricGroup;
    let ok: MetricGroup = serde_json::from_str(
        r#"{"cyclic_orders": [3], "q": [{"m": 1, "k": 0}, {"m": 3, "k": 1}, {"m": 3, "k": 1}]}"#,
    )
    .unwrap();
    assert_eq!(ok.order(), 3);
    for bad in [
        r#"{"cyclic_orders": [3], "q": [{"m": 1, "k": 0}, {"m": 3, "k": 1}]}"#,
        r#"{"cyclic_orders": [3], "q": [{"m": 3, "k": 1}, {"m": 3, "k": 1}, {"m": 3, "k": 1}]}"#,
        r#"{"cyclic_orders": [3], "q": [{"m": 1, "k": 0}, {"m": 3, "k": 1}, {"m": 3, "k": 2}]}"#,
        r#"{"cyclic_orders": [4096, 2], "q": []}"#,
        r#"{"cyclic_orders": [1], "q": [{"m": 1, "k": 0}], "extra": 1}"#,
    ] {
        assert!(serde_json::from_str::<MetricGroup>(bad).is_err(), "{bad}");
    }
}

#[test]
fn fuzz_seeds_are_accepted() {
    use mdtk::construct::MetricGroup;
    use mdtk::cyclo::wire::{parse_cyc, parse_root};
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let read = |dir: &str| -> Vec<String> {
        let mut files: Vec<_> = std::fs::read_dir(root.join(dir))
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        files
            .iter()
            .map(|p| std::fs::read_to_string(p).unwrap())
            .collect()
    };
    for text in read("load_datum") {
        assert!(from_json(&text).unwrap().datum.verify().all_passed());
    }
    for text in read("parse_cyc") {
        parse_cyc(&text).unwrap();
    }
    for text in read("parse_root_of_unity") {
        parse_root(&text).unwrap();
    }
    for text in read("parse_metric_group") {
        serde_json::from_str::<MetricGroup>(&text).unwrap();
    }
}

use gtrs_web::{analyze, exponential, random_trs};
use serde_json::Value;

const U: &str = include_str!("../../core/tests/fixtures/U.trs");
const V: &str = include_str!("../../core/tests/fixtures/V.trs");

#[test]
fn analyze_reports_verdicts_and_tables() {
    let u: Value = serde_json::from_str(&analyze(U).unwrap()).unwrap();
    assert_eq!(u["report"]["verdicts"]["cr"], "NO");
    assert_eq!(u["report"]["witnesses"]["unc"]["kind"], "convertible-normal-forms");
    assert!(u["tables"].as_str().unwrap().contains("classes:"));
    assert!(u["report"].get("timings_ms").is_none());

    let v: Value = serde_json::from_str(&analyze(V).unwrap()).unwrap();
    for p in ["cr", "nfp", "unc", "unr"] {
        assert_eq!(v["report"]["verdicts"][p], "YES");
    }
}

#[test]
fn analyze_rejects_bad_input() {
    let err = analyze("(VAR x)\n(RULES f(x) -> a)").unwrap_err();
    assert!(err.starts_with("2:10"), "{err}");
}

#[test]
fn exponential_witness_doubles() {
    let small: Value = serde_json::from_str(&exponential(3).unwrap()).unwrap();
    assert_eq!(small["unr"], "NO");
    assert_eq!(small["witness_sizes"], serde_json::json!([1, 15]));
    assert!(small["witness"].is_array());

    let big: Value = serde_json::from_str(&exponential(20).unwrap()).unwrap();
    assert_eq!(big["witness_sizes"][1], (1u64 << 21) - 1);
    assert!(big["witness"].is_null());
    assert!(exponential(61).is_err());
}

#[test]
fn random_systems_round_trip_through_analyze() {
    for seed in 0..20 {
        let text = random_trs(seed, 3, 1, 1, 4, 3);
        let a = random_trs(seed, 3, 1, 1, 4, 3);
        assert_eq!(text, a, "generation is deterministic");
        let out: Value = serde_json::from_str(&analyze(&text).unwrap()).unwrap();
        assert!(out["report"]["verdicts"]["cr"].is_string());
    }
}

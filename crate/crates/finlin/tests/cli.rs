//! End-to-end tests of the command-line verifier: exit-code contract,
//! deterministic machine reports, witness re-verification, and agreement of
//! the shipped corpus with the standard constructors.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn finlin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finlin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn corpus_path(rel: &str) -> String {
    corpus_dir().join(rel).to_string_lossy().into_owned()
}

#[test]
fn classify_m2_exits_zero_and_reports_symmetric() {
    let out = finlin(&["classify", &corpus_path("algebras/m2q.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("symmetric=true"), "{text}");
    assert!(text.contains("verdict: pass"));
}

#[test]
fn classify_ut2_reports_not_self_injective() {
    let out = finlin(&["classify", &corpus_path("algebras/ut2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("self_injective=false"), "{text}");
}

#[test]
fn radford_sweedler_passes() {
    let out = finlin(&[
        "radford",
        &corpus_path("hopf/sweedler.json"),
        &corpus_path("modules/sweedler_trivial.json"),
        &corpus_path("modules/sweedler_sign.json"),
        &corpus_path("modules/sweedler_regular.json"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn check_corrupted_file_exits_three() {
    let dir = std::env::temp_dir().join("finlin_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ definitely not json").unwrap();
    let out = finlin(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    // semantic corruption: right shape, wrong structure constants
    let nonassoc = dir.join("nonassoc.json");
    std::fs::write(
        &nonassoc,
        r#"{"field": "Q", "dim": 3,
            "mult": [[[1,0,0],[0,1,0],[0,0,1]],
                     [[0,1,0],[0,0,1],[1,0,0]],
                     [[0,0,1],[0,0,0],[0,0,0]]],
            "unit": [1,0,0]}"#,
    )
    .unwrap();
    let out = finlin(&["check", nonassoc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid"), "{err}");
}

#[test]
fn machine_reports_are_deterministic_and_reverify() {
    let run = || {
        let out = finlin(&[
            "classify",
            &corpus_path("hopf/sweedler.json"),
            "--format",
            "machine",
            "--seed",
            "7",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().insert("timing_ms".into(), serde_json::json!(0));
        v
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "reports must be byte-identical modulo timing");
    assert!(finlin::io::Report::reverify_json(&a).unwrap(), "witnesses re-verify on load");
}

#[test]
fn quiet_suppresses_witnesses() {
    let out = finlin(&[
        "classify",
        &corpus_path("algebras/m2q.json"),
        "--format",
        "machine",
        "--quiet",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for item in v["items"].as_array().unwrap() {
        assert!(item["witness"].is_null());
    }
}

#[test]
fn peterweyl_on_corpus_diagrams() {
    for d in ["diagrams/m2q_pw.json", "diagrams/dual_numbers_pw.json"] {
        let out = finlin(&["peterweyl", &corpus_path(d)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn unimodular_contract_across_corpus() {
    for (h, expect_symmetric) in
        [("hopf/kc2.json", true), ("hopf/sweedler.json", false), ("hopf/taft3_f7.json", false)]
    {
        let out = finlin(&["unimodular", &corpus_path(h)]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(
            text.contains(&format!("symmetric Frobenius: {expect_symmetric}")),
            "{h}: {text}"
        );
    }
}

#[test]
fn restriction_command_passes() {
    let out = finlin(&[
        "restriction",
        &corpus_path("hopf/kc2.json"),
        &corpus_path("hopf/sweedler.json"),
        &corpus_path("embeddings/kc2_in_sweedler.json"),
        &corpus_path("modules/kc2_sign.json"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn ew_round_trips_on_corpus_bimodule() {
    // build a bimodule document on the fly: the coregular bimodule of UT2
    let dir = std::env::temp_dir().join("finlin_cli_ew");
    std::fs::create_dir_all(&dir).unwrap();
    let a = std::sync::Arc::new(finlin::algebra::standard::upper_triangular(
        finlin::exact::Field::Rationals,
        2,
    ));
    let doc = finlin::io::InputDocument::Bimodule(finlin::modrep::Bimodule::coregular(a));
    let p = dir.join("ut2_coreg.json");
    std::fs::write(&p, finlin::io::serialize(&doc)).unwrap();
    let out = finlin(&["ew", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("translate_round_trip"));
    assert!(text.contains("translate_identity_is_nakayama"));
}

#[test]
fn corpus_files_match_standard_constructors() {
    use finlin::algebra::standard::*;
    use finlin::exact::Field;
    use finlin::io::{parse_file, InputDocument};
    let q = Field::Rationals;
    let cases: Vec<(&str, finlin::algebra::Algebra)> = vec![
        ("algebras/base_field.json", base_field(q)),
        ("algebras/m2q.json", matrix_algebra(q, 2)),
        ("algebras/m3q.json", matrix_algebra(q, 3)),
        ("algebras/ut2.json", upper_triangular(q, 2)),
        ("algebras/ut3.json", upper_triangular(q, 3)),
        ("algebras/dual_numbers.json", truncated_polynomial(q, 2)),
        ("algebras/poly3.json", truncated_polynomial(q, 3)),
        ("algebras/kc2.json", group_algebra(q, &cyclic_table(2)).unwrap()),
        ("algebras/kc3.json", group_algebra(q, &cyclic_table(3)).unwrap()),
    ];
    for (path, expect) in cases {
        let doc = parse_file(&corpus_dir().join(path)).unwrap();
        let InputDocument::Algebra(a) = doc else { panic!("{path} is not an algebra") };
        assert_eq!(a.structure_tensor(), expect.structure_tensor(), "{path}");
    }
    for (path, expect) in [
        ("hopf/sweedler.json", finlin::hopf::standard::sweedler(q).unwrap()),
        ("hopf/taft3_f7.json", finlin::hopf::standard::taft(Field::Prime(7), 3, 2, "T3").unwrap()),
    ] {
        let doc = parse_file(&corpus_dir().join(path)).unwrap();
        let InputDocument::Hopf(h) = doc else { panic!("{path} is not hopf") };
        assert_eq!(h.comult(), expect.comult(), "{path}");
        assert_eq!(h.antipode(), expect.antipode(), "{path}");
    }
}

#[test]
fn full_suite_passes() {
    let out = finlin(&["suite", &corpus_path("suites/full.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("verdict: pass"));
    assert!(!text.contains("FAIL"));
}

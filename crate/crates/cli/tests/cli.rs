mod common;

use chirality_core::{CertificateKind, Verdict};
use common::run;
use serde_json::Value;

fn schema_validator() -> jsonschema::Validator {
    let text = include_str!("../../../docs/certificate.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn every_command_emits_schema_valid_lines() {
    let validator = schema_validator();
    let commands: &[&[&str]] = &[
        &["torus", "certify", "--n", "2"],
        &["lens", "degrees", "--t", "9", "--q", "1,2"],
        &["lens", "chirality", "--t", "5", "--q", "1,1"],
        &["lens", "min-order", "--k", "2"],
        &["dga", "verify-dim9", "--sweep-bound", "1"],
        &["dga", "verify-dim13", "--star-bound", "0"],
        &[
            "dga",
            "admissible",
            "--matrix",
            "1,0,0,0;0,1,0,0;0,0,1,2;0,0,0,1",
        ],
        &[
            "plan",
            "--dim",
            "1",
            "--max-dim",
            "30",
            "--simply-connected",
        ],
        &["plan", "--dim", "3", "--max-dim", "30"],
        &["groups", "h4", "--primes", "3,7"],
        &["groups", "h4-search", "--count", "3", "--bound", "20"],
        &["obstruction", "linking", "--t", "5", "--dim", "11"],
        &[
            "obstruction",
            "signature",
            "--dim",
            "8",
            "--signature",
            "-3",
        ],
    ];
    for args in commands {
        let out = run(args);
        assert!(out.code <= 1, "{args:?}: {}", out.stderr);
        for line in out.stdout.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{args:?}: {errors:?}");
        }
        for c in out.certificates() {
            assert!(c.hash_is_valid());
            assert!(c.timestamp.is_some());
        }
    }
}

#[test]
fn lens_chirality_exit_codes() {
    let out = run(&["lens", "chirality", "--t", "7", "--q", "1,1"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.starts_with("PASS lens-chirality"));
    let out = run(&["lens", "chirality", "--t", "5", "--q", "1,1"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.single().checks[0].data["witness_e"], 2);
}

#[test]
fn plan_nine_nests_the_dga_certificate() {
    let out = run(&["plan", "--dim", "9", "--simply-connected"]);
    assert_eq!(out.code, 0);
    let c = out.single();
    assert_eq!(c.kind, CertificateKind::PlanRecipe);
    let sub = c
        .subcertificates
        .iter()
        .find(|s| s.kind == CertificateKind::DgaDim9)
        .unwrap();
    assert_eq!(sub.verdict, Verdict::Pass);
    assert!(c.check("subcertificate:dga-dim9").is_some());
    assert!(c.witnesses["bordism_note"].is_string());
}

#[test]
fn plan_twenty_one_is_marked_citation_only() {
    let c = run(&[
        "plan",
        "--dim",
        "21",
        "--simply-connected",
        "--no-bordism-note",
    ])
    .single();
    assert_eq!(c.witnesses["citation_only"], true);
    assert!(c.witnesses.get("bordism_note").is_none());
}

#[test]
fn no_obstruction_exits_one() {
    let out = run(&["obstruction", "linking", "--t", "5", "--dim", "7"]);
    assert_eq!(
        (out.code, out.single().verdict),
        (1, Verdict::NoObstruction)
    );
    let out = run(&["obstruction", "signature", "--dim", "4", "--signature", "0"]);
    assert_eq!(out.code, 1);
}

#[test]
fn input_errors_exit_two_with_payload() {
    for args in [
        &["torus", "certify", "--n", "3"][..],
        &["obstruction", "signature", "--dim", "6", "--signature", "1"],
        &["obstruction", "linking", "--t", "6", "--dim", "5"],
        &["dga", "admissible", "--matrix", "1,0;0"],
        &[
            "dga",
            "verify-dim9",
            "--algebra",
            "/nonexistent/algebra.txt",
        ],
        &["plan", "--dim", "9", "--max-dim", "4"],
    ] {
        let out = run(args);
        assert_eq!(out.code, 2, "{args:?}");
        let v: Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["error"]["type"], "input", "{args:?}");
    }
    assert_eq!(run(&["lens", "chirality", "--t", "7"]).code, 2);
    assert_eq!(run(&["bogus"]).code, 2);
}

#[test]
fn help_and_version_exit_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("plan"));
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn custom_algebra_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.txt");
    let text = chirality_core::dga::format_algebra(&chirality_core::dga::minimal_model());
    std::fs::write(&path, text).unwrap();
    let p = path.to_str().unwrap();
    let a = run(&[
        "dga",
        "verify-dim9",
        "--algebra",
        p,
        "--sweep-bound",
        "1",
        "--no-timestamp",
    ]);
    let b = run(&["dga", "verify-dim9", "--sweep-bound", "1", "--no-timestamp"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn swapping_base_classes_is_not_admissible() {
    let out = run(&["dga", "admissible", "--matrix", "0,1,0;1,0,0;0,0,1"]);
    assert_eq!(out.code, 1);
    let out = run(&["dga", "admissible", "--matrix", "-1,0,0;0,1,0;0,0,-1"]);
    assert_eq!(out.code, 0);
}

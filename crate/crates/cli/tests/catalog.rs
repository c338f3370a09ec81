mod common;

use std::io::Write;

use chirality_cli::catalog::{Catalog, Filter};
use chirality_core::CertificateKind;
use common::{run, run_with_input};

#[test]
fn record_then_list_by_kind() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.jsonl");
    let p = path.to_str().unwrap();
    assert_eq!(
        run(&[
            "--catalog",
            p,
            "--record",
            "lens",
            "chirality",
            "--t",
            "7",
            "--q",
            "1,1"
        ])
        .code,
        0
    );
    assert_eq!(
        run(&[
            "--catalog",
            p,
            "--record",
            "obstruction",
            "linking",
            "--t",
            "6",
            "--dim",
            "7"
        ])
        .code,
        0
    );
    let out = run(&[
        "--catalog",
        p,
        "catalog",
        "list",
        "--kind",
        "lens-chirality",
    ]);
    assert_eq!(out.code, 0);
    let certs = out.certificates();
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0].kind, CertificateKind::LensChirality);
    let out = run(&[
        "--catalog",
        p,
        "catalog",
        "list",
        "--dimension",
        "7",
        "--verdict",
        "PASS",
    ]);
    assert_eq!(out.certificates().len(), 1);
}

#[test]
fn duplicates_are_collapsed_on_query() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.jsonl");
    let p = path.to_str().unwrap();
    for _ in 0..3 {
        run(&[
            "--catalog",
            p,
            "--record",
            "--no-timestamp",
            "groups",
            "h4",
            "--primes",
            "3,7",
        ]);
    }
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 3);
    let out = run(&["--catalog", p, "catalog", "list"]);
    assert_eq!(out.certificates().len(), 1);
}

#[test]
fn corrupt_lines_are_skipped_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.jsonl");
    let p = path.to_str().unwrap();
    run(&[
        "--catalog",
        p,
        "--record",
        "lens",
        "chirality",
        "--t",
        "7",
        "--q",
        "1,1",
    ]);
    let mut f = std::fs::OpenOptions::new()
        .append(true)
        .open(&path)
        .unwrap();
    writeln!(f, "{{not json").unwrap();
    drop(f);
    run(&[
        "--catalog",
        p,
        "--record",
        "lens",
        "chirality",
        "--t",
        "5",
        "--q",
        "1,1",
    ]);
    let out = run(&["--catalog", p, "catalog", "list"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.certificates().len(), 2);
    assert!(out.stderr.contains("skipped corrupt record"));
}

#[test]
fn add_from_stdin_rejects_tampered_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.jsonl");
    let p = path.to_str().unwrap();
    let good = run(&["lens", "chirality", "--t", "7", "--q", "1,1"]).stdout;
    let tampered = good.replace("STRONGLY_CHIRAL", "DEGREE_MINUS_ONE");
    let out = run_with_input(
        &["--catalog", p, "catalog", "add"],
        &format!("{good}{tampered}"),
    );
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("determinism hash does not match"));
    let q = Catalog::new(&path).query(&Filter::default()).unwrap();
    assert_eq!(q.records.len(), 1);
    let out = run_with_input(&["--catalog", p, "catalog", "add"], "garbage\n");
    assert_eq!(out.code, 2);
}

#[test]
fn catalog_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.jsonl");
    // only this test touches the variable
    unsafe { std::env::set_var(chirality_cli::catalog::ENV_VAR, &path) };
    run(&["--record", "groups", "h4", "--primes", "5,13"]);
    unsafe { std::env::remove_var(chirality_cli::catalog::ENV_VAR) };
    let q = Catalog::new(&path).query(&Filter::default()).unwrap();
    assert_eq!(q.records.len(), 1);
}

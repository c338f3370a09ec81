//! Acceptance suite: one line per criterion on stdout, then a single
//! assertion over all of them. Run with
//! `cargo test -p chirality-cli --test acceptance -- --nocapture`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use chirality_core::dga::{minimal_model, verify_dim13, verify_dim9, Dim13Options, Dim9Options};
use chirality_core::groups::{h4_condition, MetacyclicTuple};
use chirality_core::lens::{construct_minimal_order, is_strongly_chiral, LensChirality, LensSpace};
use chirality_core::torus::{certify_mapping_torus, ConditionCRoute};
use chirality_core::{Certificate, Verdict};
use common::run;
use num_bigint::BigInt;
use serde_json::Value;

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    assert!(elapsed < limit, "took {elapsed:?}, limit {limit:?}");
    (v, elapsed)
}

fn all_pass(c: &Certificate) -> bool {
    c.walk()
        .iter()
        .all(|s| s.verdict == Verdict::Pass && s.hash_is_valid())
}

fn criterion_torus() -> String {
    let mut details = Vec::new();
    for (n, bound) in [(2usize, 10u64), (4, 3), (6, 0), (8, 0)] {
        let (cert, t) = timed(Duration::from_secs(5), || {
            certify_mapping_torus(n, bound).unwrap()
        });
        assert_eq!(cert.verdict, Verdict::Pass, "n = {n}");
        assert_eq!(cert.determinant, BigInt::from(1));
        assert_eq!(cert.condition_a.det_f_minus_identity, BigInt::from(1));
        assert!(cert.condition_b.squarefree);
        assert_eq!(cert.condition_b.real_root_count, Some(0));
        assert_eq!(cert.condition_b.falsifier.counterexamples, 0);
        assert_eq!(cert.condition_c.falsifier.counterexamples, 0);
        match &cert.condition_c.route {
            ConditionCRoute::NonPalindromic { .. } => assert!(n >= 4),
            ConditionCRoute::DeterminantForm {
                form: Some(form),
                never_one: true,
                ..
            } => {
                assert_eq!(n, 2);
                assert!(form.is_negative_definite());
                let reduced = form.negate().reduced().unwrap();
                assert_eq!(
                    (reduced.a.clone(), reduced.b.clone(), reduced.c.clone()),
                    (1.into(), 1.into(), 1.into())
                );
            }
            other => panic!("unexpected route for n = {n}: {other:?}"),
        }
        let out = run(&["torus", "certify", "--n", &n.to_string()]);
        assert_eq!(out.code, 0);
        assert_eq!(
            out.single().compute_hash(),
            cert.to_certificate().compute_hash()
        );
        details.push(format!("n={n} {t:.2?}"));
    }
    details.join(", ")
}

fn oracle_has_minus_one(t: u64, n: u64) -> bool {
    (1..t).any(|e| {
        let mut acc = 1u64;
        for _ in 0..n {
            acc = acc * e % t;
        }
        acc == t - 1
    })
}

fn criterion_lens() -> String {
    let out = run(&["lens", "chirality", "--t", "5", "--q", "1,1"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.single().checks[0].data["witness_e"], Value::from(2));
    let out = run(&["lens", "chirality", "--t", "7", "--q", "1,1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.single().checks[0].data["status"], "STRONGLY_CHIRAL");
    let (cases, t) = timed(Duration::from_secs(10), || {
        let mut cases = 0;
        for t in 3..=2000u64 {
            for n in 1..=10u64 {
                let lens = LensSpace::new(t, &vec![1; n as usize]).unwrap();
                let chiral = is_strongly_chiral(&lens).unwrap() == LensChirality::StronglyChiral;
                assert_eq!(chiral, !oracle_has_minus_one(t, n), "t = {t}, n = {n}");
                cases += 1;
            }
        }
        cases
    });
    format!("{cases} (t, n) pairs agree with the oracle in {t:.2?}")
}

fn oracle_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

type Criterion = (&'static str, fn() -> String);

fn oracle_smallest_primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&c| {
            let mut x = 1;
            (1..p).find(|_| {
                x = x * c % p;
                x == 1
            }) == Some(p - 1)
        })
        .unwrap()
}

fn oracle_minimal_order_prime(k: u32) -> u64 {
    (5..)
        .find(|&p| oracle_prime(p) && (p - 1).trailing_zeros() == k)
        .unwrap()
}

fn criterion_min_order() -> String {
    let expected = [(1, 7, 3), (2, 5, 2), (3, 41, 6), (4, 17, 3)];
    for (k, p, c) in expected {
        let cert = construct_minimal_order(k, 1 << 40).unwrap();
        assert_eq!((cert.p, cert.c), (p, c), "k = {k}");
    }
    let mut worst = Duration::ZERO;
    for k in 1..=6u32 {
        let (cert, t) = timed(Duration::from_secs(1), || {
            construct_minimal_order(k, 1 << 40).unwrap()
        });
        worst = worst.max(t);
        assert_eq!(cert.p, oracle_minimal_order_prime(k), "k = {k}");
        assert_eq!(cert.c, oracle_smallest_primitive_root(cert.p));
        assert_eq!(cert.c_pow_n, cert.p - 1);
        assert_eq!(cert.order_sweep.verdict, Verdict::Pass);
        assert_eq!(cert.verdict, Verdict::Pass);
        let out = run(&["lens", "min-order", "--k", &k.to_string()]);
        assert_eq!(out.code, 0);
    }
    format!("k=1..6, slowest {worst:.2?}")
}

fn criterion_dim9() -> String {
    let alg = minimal_model();
    let (r, t) = timed(Duration::from_secs(30), || {
        verify_dim9(&alg, Dim9Options { sweep_bound: 2 }).unwrap()
    });
    assert!(r.d_squared_zero);
    assert!(r.class.d_plus.is_zero() != r.class.d_minus.is_zero());
    assert_eq!(
        r.abc_in_boundaries,
        num_rational::BigRational::from_integer(0.into())
    );
    assert!(r.nonexact_functional.is_some());
    assert_eq!(r.sign_actions.len(), 8);
    assert!(r.sign_actions.iter().all(|a| a.fixes()));
    assert_eq!(r.admissible_signed_permutations.len(), 8);
    assert!(r.sweep.non_diagonal.is_empty());
    assert_eq!(r.verdict, Verdict::Pass);
    format!(
        "epsilon={}, {} unimodular matrices swept, {} admissible, {t:.2?}",
        r.class.epsilon, r.sweep.unimodular, r.sweep.admissible
    )
}

fn criterion_dim13() -> String {
    let (r, t) = timed(Duration::from_secs(120), || {
        verify_dim13(Dim13Options { star_bound: 3 }).unwrap()
    });
    let admissible = r.admissible();
    assert!(admissible > 0);
    assert_eq!(r.count_lambda(1), admissible);
    assert_eq!(r.count_lambda(-1), 0);
    assert_eq!(r.verdict, Verdict::Pass);
    format!("{admissible} admissible patterns, all with coefficient +1, {t:.2?}")
}

fn criterion_planner() -> String {
    let (_, t) = timed(Duration::from_secs(120), || {
        let general = run(&["plan", "--dim", "3", "--max-dim", "64"]);
        assert_eq!(general.code, 0);
        let certs = general.certificates();
        assert_eq!(certs.len(), 62);
        assert!(certs.iter().all(all_pass));
        let sc = run(&[
            "plan",
            "--dim",
            "7",
            "--max-dim",
            "64",
            "--simply-connected",
        ]);
        assert_eq!(sc.code, 0);
        let certs = sc.certificates();
        assert_eq!(certs.len(), 58);
        assert!(certs.iter().all(all_pass));
        for n in ["3", "5", "6"] {
            let out = run(&["plan", "--dim", n, "--simply-connected"]);
            assert_eq!(out.code, 0);
            let c = out.single();
            assert_eq!(c.checks[0].data["status"], "AMPHICHEIRAL", "n = {n}");
        }
        let nine = run(&["plan", "--dim", "9", "--simply-connected"]).single();
        assert!(nine
            .subcertificates
            .iter()
            .any(|s| s.kind == chirality_core::CertificateKind::DgaDim9));
    });
    format!("general 3..64 and simply-connected 7..64 in {t:.2?}")
}

fn criterion_groups() -> String {
    let tuple = |ps: &[u64]| MetacyclicTuple::new(ps).unwrap();
    assert!(h4_condition(&tuple(&[3, 7])).is_some());
    assert!(h4_condition(&tuple(&[5, 13])).is_some());
    assert!(h4_condition(&tuple(&[3, 5])).is_none());
    for p in [3, 5, 7, 11, 13] {
        assert!(h4_condition(&tuple(&[p])).is_none());
    }
    let (out, t) = timed(Duration::from_secs(1), || {
        run(&["groups", "h4-search", "--count", "10", "--bound", "200"])
    });
    assert_eq!(out.code, 0);
    let cert = out.single();
    let tuples = cert.checks[1].data["tuples"].as_array().unwrap().clone();
    assert_eq!(tuples.len(), 10);
    let orders: std::collections::BTreeSet<String> = tuples
        .iter()
        .map(|t| t["order"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(orders.len(), 10);
    for t in &tuples {
        let ps: Vec<u64> = t["primes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        assert!(h4_condition(&tuple(&ps)).is_some());
    }
    format!("10 tuples with distinct orders in {t:.2?}")
}

const COMMANDS: &[&[&str]] = &[
    &["torus", "certify", "--n", "2"],
    &["torus", "certify", "--n", "4"],
    &["torus", "certify", "--n", "6"],
    &["torus", "certify", "--n", "8"],
    &["lens", "chirality", "--t", "5", "--q", "1,1"],
    &["lens", "chirality", "--t", "7", "--q", "1,1"],
    &["lens", "degrees", "--t", "7", "--q", "1,1"],
    &["lens", "min-order", "--k", "3"],
    &["dga", "verify-dim9"],
    &["dga", "verify-dim13", "--star-bound", "3"],
    &["dga", "admissible", "--matrix", "1,0,0;0,-1,0;0,0,1"],
    &["plan", "--dim", "3", "--max-dim", "64"],
    &[
        "plan",
        "--dim",
        "7",
        "--max-dim",
        "64",
        "--simply-connected",
    ],
    &["groups", "h4-search", "--count", "10", "--bound", "200"],
    &["obstruction", "linking", "--t", "6", "--dim", "7"],
];

fn strip_timestamps(stdout: &str) -> Vec<String> {
    stdout
        .lines()
        .map(|l| {
            chirality_core::certificate::canonical_json(&Certificate::from_json(l).unwrap().body())
        })
        .collect()
}

fn criterion_determinism() -> String {
    let mut lines = 0;
    for args in COMMANDS {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.code, b.code, "{args:?}");
        let (x, y) = (strip_timestamps(&a.stdout), strip_timestamps(&b.stdout));
        assert!(!x.is_empty());
        assert_eq!(x, y, "{args:?}");
        lines += x.len();
    }
    format!(
        "{} commands, {lines} certificate bodies identical across two runs",
        COMMANDS.len()
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("mapping-torus family", criterion_torus),
        ("lens arithmetic", criterion_lens),
        ("minimal-order lens spaces", criterion_min_order),
        ("dga dimension 9", criterion_dim9),
        ("dga dimension 13", criterion_dim13),
        ("planner totality", criterion_planner),
        ("groups", criterion_groups),
        ("determinism", criterion_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

use chirality_core::products::{plan_dimension, Chirality, Plan};
use chirality_core::Verdict;

#[test]
fn every_dimension_has_a_plan() {
    for simply_connected in [false, true] {
        for n in 1..=64u64 {
            let plan = plan_dimension(n, simply_connected).unwrap();
            assert_eq!(plan.dimension(), n);
            let cert = plan.to_certificate();
            assert_eq!(
                cert.verdict,
                Verdict::Pass,
                "n = {n}, simply connected = {simply_connected}"
            );
            assert!(cert.hash_is_valid());
            match plan {
                Plan::Amphicheiral { .. } => {
                    let low = if simply_connected {
                        [1, 2, 3, 5, 6].contains(&n)
                    } else {
                        n <= 2
                    };
                    assert!(low, "unexpected amphicheiral plan in dimension {n}");
                }
                Plan::Recipe(r) => {
                    assert!(r.dimensions_consistent(), "n = {n}");
                    assert_eq!(r.result.dimension, n);
                    assert_eq!(r.simply_connected, simply_connected);
                    if simply_connected {
                        assert!(r.components.iter().all(|c| c.simply_connected), "n = {n}");
                    }
                    if !r.citation_only {
                        assert_eq!(
                            r.result.chirality.chirality,
                            Chirality::StronglyChiral,
                            "n = {n}"
                        );
                    }
                    for sub in &r.subcertificates {
                        assert!(sub.all_mandatory_pass(), "n = {n}: {:?} failed", sub.kind);
                    }
                }
            }
        }
    }
}

#[test]
fn general_track_is_never_citation_only_above_two() {
    for n in 3..=64u64 {
        match plan_dimension(n, false).unwrap() {
            Plan::Recipe(r) => assert!(!r.citation_only, "n = {n}"),
            Plan::Amphicheiral { .. } => panic!("n = {n}"),
        }
    }
}

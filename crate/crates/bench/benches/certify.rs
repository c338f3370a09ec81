use chirality_core::dga::{minimal_model, verify_dim13, verify_dim9, Dim13Options, Dim9Options};
use chirality_core::groups::search_tuples;
use chirality_core::lens::{construct_minimal_order, is_strongly_chiral, LensSpace};
use chirality_core::products::{PlanOptions, Planner};
use chirality_core::torus::certify_mapping_torus;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn torus(c: &mut Criterion) {
    let mut g = c.benchmark_group("torus");
    for n in [2usize, 4, 8, 16] {
        g.bench_function(format!("certify n={n}"), |b| {
            b.iter(|| certify_mapping_torus(black_box(n), 0).unwrap())
        });
    }
    g.finish();
}

fn lens(c: &mut Criterion) {
    c.bench_function("lens chirality t<=200 n<=8", |b| {
        b.iter(|| {
            let mut chiral = 0;
            for t in 3..=200u64 {
                for n in 1..=8usize {
                    let l = LensSpace::new(t, &vec![1; n]).unwrap();
                    chiral += usize::from(matches!(
                        is_strongly_chiral(&l).unwrap(),
                        chirality_core::lens::LensChirality::StronglyChiral
                    ));
                }
            }
            chiral
        })
    });
    c.bench_function("minimal order k=6", |b| {
        b.iter(|| construct_minimal_order(black_box(6), 1 << 40).unwrap())
    });
}

fn dga(c: &mut Criterion) {
    let mut g = c.benchmark_group("dga");
    g.sample_size(10);
    let alg = minimal_model();
    g.bench_function("dim9 sweep bound 1", |b| {
        b.iter(|| verify_dim9(&alg, Dim9Options { sweep_bound: 1 }).unwrap())
    });
    g.bench_function("dim13 star bound 1", |b| {
        b.iter(|| verify_dim13(Dim13Options { star_bound: 1 }).unwrap())
    });
    g.finish();
}

fn planner(c: &mut Criterion) {
    let mut g = c.benchmark_group("planner");
    g.sample_size(10);
    g.bench_function("general 3..=64", |b| {
        b.iter(|| {
            let p = Planner::new(PlanOptions::default());
            (3..=64)
                .map(|n| p.plan(n, false).unwrap().dimension())
                .sum::<u64>()
        })
    });
    g.finish();
}

fn groups(c: &mut Criterion) {
    c.bench_function("h4 search 3 tuples", |b| {
        b.iter(|| search_tuples(black_box(3), 200).unwrap())
    });
}

criterion_group!(benches, torus, lens, dga, planner, groups);
criterion_main!(benches);

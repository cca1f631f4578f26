use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use lcverify_bench::{cyclic, membership};
use lcverify_core::groebner::BasisCache;
use lcverify_core::linalg::DEFAULT_PIECE_BOUND;
use lcverify_core::verifiers::{cohomology_reports, run_ex1_tower, run_ex2_tower};
use lcverify_core::{ideal_member, linear_membership_oracle, Alphas, Budget, GroebnerBasis, IdealGens};

fn buchberger(c: &mut Criterion) {
    let mut g = c.benchmark_group("buchberger");
    for n in [4, 5] {
        let ideal = cyclic(n);
        g.bench_with_input(BenchmarkId::new("cyclic", n), &ideal, |b, ideal| {
            b.iter(|| GroebnerBasis::compute(ideal, &Budget::unlimited()).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("cyclic_tracked", n), &ideal, |b, ideal| {
            b.iter(|| GroebnerBasis::compute_tracked(ideal, &Budget::unlimited()).unwrap())
        });
    }
    g.finish();
}

fn cold() {
    BasisCache::global().clear();
}

fn towers(c: &mut Criterion) {
    let mut g = c.benchmark_group("tower");
    g.sample_size(10);
    for depth in [1, 3] {
        g.bench_with_input(BenchmarkId::new("ex1_cold", depth), &depth, |b, &d| {
            b.iter_batched(cold, |_| run_ex1_tower(&Alphas::default(), d, &Budget::default()), BatchSize::PerIteration)
        });
        g.bench_with_input(BenchmarkId::new("ex2_cold", depth), &depth, |b, &d| {
            b.iter_batched(cold, |_| run_ex2_tower(d, &Budget::default()), BatchSize::PerIteration)
        });
        g.bench_with_input(BenchmarkId::new("ex1_cached", depth), &depth, |b, &d| {
            b.iter(|| run_ex1_tower(&Alphas::default(), d, &Budget::default()))
        });
    }
    g.finish();
}

fn membership_routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("membership");
    for (n, d) in [(3, 2), (4, 3)] {
        let (f, ideal) = membership(n, d);
        let none = IdealGens::new(ideal.ring(), Vec::new()).unwrap();
        let id = format!("{n}vars_deg{d}");
        g.bench_function(BenchmarkId::new("groebner", &id), |b| {
            b.iter(|| ideal_member(&f, &ideal, &Budget::unlimited()).unwrap())
        });
        g.bench_function(BenchmarkId::new("linear", &id), |b| {
            b.iter(|| linear_membership_oracle(&f, &ideal, &none, DEFAULT_PIECE_BOUND).unwrap())
        });
    }
    g.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("cohomology");
    g.sample_size(10);
    g.bench_function("reports_cold", |b| {
        b.iter_batched(cold, |_| cohomology_reports(&Alphas::default(), &Budget::default()), BatchSize::PerIteration)
    });
    g.finish();
}

criterion_group!(benches, buchberger, towers, membership_routes, cohomology);
criterion_main!(benches);

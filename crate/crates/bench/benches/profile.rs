use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ddf_core::designs::{develop, profile_direct, profile_via_differences};
use ddf_core::{build_field, Construction};
use std::hint::black_box;

fn differences(c: &mut Criterion) {
    let mut g = c.benchmark_group("profile_via_differences");
    g.sample_size(10);
    for (name, ctor, p, r) in [
        ("wilson-half", Construction::WilsonHalf, 5, 2),
        ("gr-squares", Construction::GrSquares, 5, 2),
        ("gr-squares", Construction::GrSquares, 7, 2),
    ] {
        let fam = ctor.build(p, r).unwrap();
        g.bench_with_input(BenchmarkId::new(name, format!("{p}^{r}")), &fam, |b, fam| {
            b.iter(|| profile_via_differences(black_box(fam)).unwrap())
        });
    }
    g.finish();
}

fn direct(c: &mut Criterion) {
    let fam = Construction::GrSquares.build(7, 1).unwrap();
    let design = develop(&fam);
    c.bench_function("profile_direct/gr-squares/7^1", |b| {
        b.iter(|| profile_direct(black_box(&design)).unwrap())
    });
}

fn fields(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_field");
    for (p, n) in [(5, 4), (11, 3), (7, 4)] {
        g.bench_function(format!("{p}^{n}"), |b| b.iter(|| build_field(black_box(p), n).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, differences, direct, fields);
criterion_main!(benches);

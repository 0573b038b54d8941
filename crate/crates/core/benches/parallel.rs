//! Oracle corpora run sequentially and on the rayon pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use genusfield::par::Exec;
use genusfield::selftest;

fn corpora(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle corpus");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::new("unit groups", name), &exec, |b, &e| {
            b.iter(|| selftest::unit_group_oracle(e))
        });
        group.bench_with_input(BenchmarkId::new("decompositions", name), &exec, |b, &e| {
            b.iter(|| selftest::decomposition_invariants(e, 1, 60))
        });
        group.bench_with_input(BenchmarkId::new("kummer cross-check", name), &exec, |b, &e| {
            b.iter(|| selftest::kummer_character_cross(e))
        });
    }
    group.finish();
}

criterion_group!(benches, corpora);
criterion_main!(benches);

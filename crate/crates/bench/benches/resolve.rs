use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use biocoref_bench::{fixture_docs, resolve_all, resolve_and_serialize, synthetic_docs};
use biocoref_core::fixtures::corpus_resolver;

fn fixtures(c: &mut Criterion) {
    let resolver = corpus_resolver();
    let docs = fixture_docs();
    let mut group = c.benchmark_group("fixtures");
    group.throughput(Throughput::Elements(docs.len() as u64));
    group.bench_function("resolve", |b| b.iter(|| resolve_all(&resolver, black_box(&docs))));
    group.bench_function("resolve_and_serialize", |b| {
        b.iter(|| resolve_and_serialize(&resolver, black_box(&docs)))
    });
    group.finish();
}

fn synthetic(c: &mut Criterion) {
    let resolver = corpus_resolver();
    let mut group = c.benchmark_group("synthetic");
    for n in [10, 100, 1000] {
        let docs = synthetic_docs(n);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &docs, |b, docs| {
            b.iter(|| resolve_all(&resolver, black_box(docs)))
        });
    }
    group.finish();
}

criterion_group!(benches, fixtures, synthetic);
criterion_main!(benches);

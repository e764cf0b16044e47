use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use phsimplify::persistence::{compute_diagram_with, Reduction};
use phsimplify::{collapse_reduce, coreduce, excise, grow_acyclic};
use phsimplify_bench::{constant_cube, noisy_cube};

fn reductions(c: &mut Criterion) {
    let noisy = noisy_cube(12, 3, 11);
    let constant = constant_cube(12);

    let mut group = c.benchmark_group("reduce");
    group.bench_function("collapse/noisy12", |b| {
        b.iter_batched(
            || noisy.clone(),
            |mut k| collapse_reduce(&mut k).unwrap(),
            BatchSize::LargeInput,
        )
    });
    group.bench_function("coreduce/noisy12", |b| {
        b.iter_batched(
            || noisy.clone(),
            |mut k| coreduce(&mut k).unwrap(),
            BatchSize::LargeInput,
        )
    });
    group.bench_function("acyclic/noisy12", |b| {
        b.iter_batched(
            || noisy.clone(),
            |mut k| {
                let a = grow_acyclic(&k).unwrap();
                excise(&mut k, &a).unwrap()
            },
            BatchSize::LargeInput,
        )
    });
    group.bench_function("acyclic/constant12", |b| {
        b.iter(|| grow_acyclic(&constant).unwrap())
    });
    group.finish();
}

fn persistence(c: &mut Criterion) {
    let noisy = noisy_cube(8, 3, 5);
    let mut reduced = noisy.clone();
    collapse_reduce(&mut reduced).unwrap();

    let mut group = c.benchmark_group("persistence");
    group.sample_size(20);
    group.bench_function("standard/full8", |b| {
        b.iter(|| compute_diagram_with(&noisy, Reduction::Standard))
    });
    group.bench_function("clearing/full8", |b| {
        b.iter(|| compute_diagram_with(&noisy, Reduction::Clearing))
    });
    group.bench_function("standard/collapsed8", |b| {
        b.iter(|| compute_diagram_with(&reduced, Reduction::Standard))
    });
    group.finish();
}

criterion_group!(benches, reductions, persistence);
criterion_main!(benches);

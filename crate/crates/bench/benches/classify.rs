use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use pd2_core::classify::classify_connected;
use pd2_core::enumerate::{admissible_patterns, EnumerationConstraints};
use pd2_core::constructors::{sphere, sum_of_projective, tensor, truncated};
use pd2_core::iso::are_isomorphic;

fn bench_classify_connected(c: &mut Criterion) {
    let constraints = EnumerationConstraints::default();
    let mut group = c.benchmark_group("classify_connected");
    group.sample_size(10);
    for rank in [4usize, 5, 6] {
        group.bench_function(format!("rank{rank}"), |b| {
            b.iter(|| classify_connected(rank, None, &constraints))
        });
    }
    group.finish();
}

fn bench_admissible_patterns(c: &mut Criterion) {
    let constraints = EnumerationConstraints::default();
    let mut group = c.benchmark_group("admissible_patterns");
    group.sample_size(10);
    for size in [2u32, 3] {
        group.bench_function(format!("size{size}_bound3"), |b| {
            b.iter(|| admissible_patterns(size, 3, &constraints))
        });
    }
    group.finish();
}

fn bench_isomorphism(c: &mut Criterion) {
    let a = tensor(&truncated(3, 1), &sphere_pair());
    let b = tensor(&sphere_pair(), &truncated(3, 1));
    c.bench_function("are_isomorphic/rank16", |bch| {
        bch.iter_batched(
            || (a.clone(), b.clone()),
            |(a, b)| are_isomorphic(&a, &b),
            BatchSize::SmallInput,
        )
    });
    let p = sum_of_projective(3, 3, 1).unwrap();
    let q = sum_of_projective(3, 3, 1).unwrap();
    c.bench_function("are_isomorphic/rank8_sum", |bch| {
        bch.iter_batched(
            || (p.clone(), q.clone()),
            |(p, q)| are_isomorphic(&p, &q),
            BatchSize::SmallInput,
        )
    });
}

fn sphere_pair() -> pd2_core::GradedAlgebra {
    tensor(&sphere(1), &sphere(2))
}

criterion_group!(
    benches,
    bench_classify_connected,
    bench_admissible_patterns,
    bench_isomorphism
);
criterion_main!(benches);

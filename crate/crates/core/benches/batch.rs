use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use padic::batch::{self, Execution};
use padic::{from_integer, make_context, IntPolynomial, PrintMode};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_batch(c: &mut Criterion) {
    let ctx = make_context(7, 40, PrintMode::Series).unwrap();
    let f: IntPolynomial = "x^3 - 2*x + 5".parse().unwrap();
    let points: Vec<_> = (1..=512i64)
        .map(|k| from_integer(&BigInt::from(k * 7919 + 3), &ctx))
        .collect();
    let small: Vec<_> = (1..=256i64)
        .map(|k| from_integer(&BigInt::from(7 * k), &ctx))
        .collect();
    let cube: IntPolynomial = "x^3 - 2".parse().unwrap();
    let ctx5 = make_context(5, 60, PrintMode::Series).unwrap();
    let seeds: Vec<_> = (0..256).map(|_| BigInt::from(3)).collect();
    let big = make_context(101, 20, PrintMode::Series).unwrap();

    let mut group = c.benchmark_group("batch");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("eval_many", name), |b| {
            b.iter(|| batch::eval_many(exec, &f, &points))
        });
        group.bench_function(BenchmarkId::new("exp_many", name), |b| {
            b.iter(|| batch::exp_many(exec, &small))
        });
        group.bench_function(BenchmarkId::new("lift_many", name), |b| {
            b.iter(|| batch::lift_many(exec, &cube, &seeds, &ctx5))
        });
        group.bench_function(BenchmarkId::new("roots_of_unity", name), |b| {
            b.iter(|| batch::roots_of_unity(exec, &big))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_batch);
criterion_main!(benches);

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use reinhardt_bench::{table, BUILD_SIZES};
use reinhardt_core::{chat_bruteforce, classify_dimension, save_table, TableBuilder};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_table");
    group.sample_size(10);
    for &n in BUILD_SIZES {
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| TableBuilder::new().parallel(false).build(black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| TableBuilder::new().parallel(true).build(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    c.bench_function("chat_bruteforce/40", |b| {
        b.iter(|| chat_bruteforce(black_box(40)).unwrap())
    });
}

fn queries(c: &mut Criterion) {
    let t = table(61);
    c.bench_function("classify/60", |b| {
        b.iter(|| classify_dimension(&t, 60, black_box(1800)).unwrap())
    });
    c.bench_function("big_h_set/60", |b| b.iter(|| t.big_h_set(black_box(60)).unwrap()));
    let big = table(400);
    c.bench_function("save_table/400", |b| {
        b.iter(|| {
            let mut buf = Vec::with_capacity(1 << 20);
            save_table(&big, &mut buf).unwrap();
            buf
        })
    });
}

criterion_group!(benches, build, oracle, queries);
criterion_main!(benches);

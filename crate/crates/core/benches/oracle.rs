use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use bicircular::corpus::{double_u24, fano, random_matroids, triangle_of_u24s};
use bicircular::graph::oracle::oracle_decide;
use bicircular::{canonical_tree, is_bicircular, ElementSet, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (label, m) in [("F7", fano()), ("double_U24", double_u24())] {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, label), &m, |b, m| {
                b.iter(|| oracle_decide(black_box(m), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn structural(c: &mut Criterion) {
    let mut group = c.benchmark_group("structural");
    let sample = random_matroids(40, 7);
    let extra = [fano(), triangle_of_u24s()];
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "random40"), |b| {
            b.iter(|| {
                sample
                    .iter()
                    .chain(&extra)
                    .filter(|m| is_bicircular(black_box(m), exec).unwrap().is_yes())
                    .count()
            })
        });
    }
    group.bench_function("canonical_tree/triangle_of_U24s", |b| {
        let m = triangle_of_u24s();
        b.iter(|| canonical_tree(black_box(&m)).unwrap())
    });
    group.finish();
}

fn rooted(c: &mut Criterion) {
    let mut group = c.benchmark_group("rooted_oracle");
    group.sample_size(10);
    let m = fano();
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "F7_loop_a"), |b| {
            b.iter(|| bicircular::graph::oracle_find_representation(&m, ElementSet::singleton(0), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, structural, rooted);
criterion_main!(benches);

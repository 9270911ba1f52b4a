use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use takeuchi_bench::{basel, richardson_limit, tables, ANSATZ_L, ORACLE_N, SERIES_ORDER, TABLE_N};
use takeuchi_core::ansatz::{takeuchi_ansatz, DEFAULT_SURPLUS};
use takeuchi_core::asymptotics::lambert_w;
use takeuchi_core::numerics::BigFloat;
use takeuchi_core::series::verify_takeuchi_functional_equation;
use takeuchi_core::tak_oracle::{oracle_table, DEFAULT_BUDGET};

fn sequences(c: &mut Criterion) {
    c.bench_function("takeuchi+bell tables", |b| b.iter(|| tables(black_box(TABLE_N))));
    c.bench_function("tak oracle", |b| b.iter(|| oracle_table(black_box(ORACLE_N), DEFAULT_BUDGET)));
}

fn series(c: &mut Criterion) {
    c.bench_function("verify functional equation", |b| {
        b.iter(|| verify_takeuchi_functional_equation(black_box(SERIES_ORDER)).unwrap())
    });
}

fn asymptotics(c: &mut Criterion) {
    let x = BigFloat::with_val(3072, 1000);
    c.bench_function("lambert w 3072 bits", |b| b.iter(|| lambert_w(black_box(&x), 3072).unwrap()));
    let (seq, xs) = basel(40, 256);
    c.bench_function("richardson 40 terms", |b| b.iter(|| richardson_limit(black_box(&seq), &xs)));
}

fn ansatz(c: &mut Criterion) {
    let mut g = c.benchmark_group("ansatz");
    g.sample_size(10);
    g.bench_function("takeuchi l=4", |b| b.iter(|| takeuchi_ansatz(black_box(ANSATZ_L), DEFAULT_SURPLUS).unwrap()));
    g.finish();
}

criterion_group!(benches, sequences, series, asymptotics, ansatz);
criterion_main!(benches);

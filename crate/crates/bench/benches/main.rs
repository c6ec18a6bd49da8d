use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sdc_bench::hermitian_batch;
use sdc_core::decomposition::{construct_decomposition, verify_expectation_equality};
use sdc_core::ensemble::{error_prob_exact, sample_magnetizations};
use sdc_core::linalg::hermitian_eigensystem;
use sdc_core::witness::evaluate;
use sdc_core::{run_protocol, Message, ThermalConfig};

fn bench_eigensolver(c: &mut Criterion) {
    let inputs = hermitian_batch(64, 3);
    c.bench_function("hermitian_eigensystem_4x4", |b| {
        let mut idx = 0;
        b.iter(|| {
            idx = (idx + 1) % inputs.len();
            black_box(hermitian_eigensystem(&inputs[idx]).unwrap())
        })
    });
}

fn bench_protocol(c: &mut Criterion) {
    let cfg = ThermalConfig::direct(0.3, 0.2);
    let m = Message::new(true, false);
    c.bench_function("run_protocol", |b| {
        b.iter(|| black_box(run_protocol(black_box(&cfg), m).unwrap()))
    });
    c.bench_function("witness_evaluate", |b| {
        b.iter(|| black_box(evaluate(black_box(&cfg), m).unwrap()))
    });
}

fn bench_ensemble(c: &mut Criterion) {
    c.bench_function("error_prob_exact_n1e4", |b| {
        b.iter(|| black_box(error_prob_exact(black_box(10_000), 0.05).unwrap()))
    });
    c.bench_function("sample_magnetizations_1k_shots", |b| {
        b.iter(|| {
            black_box(
                sample_magnetizations(10_000, 0.1, 0.1, Message::new(false, false), 7, 1000)
                    .unwrap(),
            )
        })
    });
}

fn bench_decomposition(c: &mut Criterion) {
    let m = Message::new(true, true);
    c.bench_function("construct_decomposition", |b| {
        b.iter(|| black_box(construct_decomposition(m)))
    });
    let d = construct_decomposition(m);
    c.bench_function("expectation_equality_100_trials", |b| {
        b.iter(|| black_box(verify_expectation_equality(&d, m, 100, 5)))
    });
}

criterion_group!(
    benches,
    bench_eigensolver,
    bench_protocol,
    bench_ensemble,
    bench_decomposition
);
criterion_main!(benches);

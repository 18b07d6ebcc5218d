use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qdf_bench::{benchmark_schedule, benchmark_state};
use qdf_core::{
    default_scan_step, discord_analytic, discord_bruteforce, hermitian_eigenvalues,
    nonmarkovian_transitions, sample_surface, Condition, ParametrizedTime,
};

fn bench_eigensolver(c: &mut Criterion) {
    let rho = benchmark_state().density_matrix();
    c.bench_function("jacobi_eigenvalues_4x4", |b| {
        b.iter(|| hermitian_eigenvalues(black_box(&rho)).unwrap())
    });
}

fn bench_analytic_sweep(c: &mut Criterion) {
    let s = benchmark_state();
    c.bench_function("discord_analytic_1000_points", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for k in 0..1000 {
                let q = ParametrizedTime::new(k as f64 / 999.0).unwrap();
                acc += discord_analytic(black_box(&s), q);
            }
            acc
        })
    });
}

fn bench_measurement_search(c: &mut Criterion) {
    let rho = benchmark_state().density_matrix();
    c.bench_function("discord_bruteforce_grid16", |b| {
        b.iter(|| discord_bruteforce(black_box(&rho), 16).unwrap())
    });
}

fn bench_surface_sampler(c: &mut Criterion) {
    c.bench_function("sample_surface_a_101", |b| {
        b.iter(|| sample_surface(Condition::A, black_box(101)).unwrap())
    });
}

fn bench_transition_scan(c: &mut Criterion) {
    let s = benchmark_state();
    let sched = benchmark_schedule();
    let period = std::f64::consts::TAU / sched.omega().unwrap();
    let dt = default_scan_step(&sched).unwrap();
    c.bench_function("rtn_transition_scan_one_period", |b| {
        b.iter(|| nonmarkovian_transitions(black_box(&s), &sched, period, dt).unwrap())
    });
}

criterion_group!(
    kernels,
    bench_eigensolver,
    bench_analytic_sweep,
    bench_measurement_search,
    bench_surface_sampler,
    bench_transition_scan
);
criterion_main!(kernels);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use qvar_bench::fixture;
use qvar_core::hilbert::{complement_basis, general_eigen, hermitian_eigen};
use qvar_core::qubit::grid_scan;
use qvar_core::relations::{sum_identity, uncertainty_report, Sign};
use qvar_core::spin::{oat_sweep, SpinSystem};

fn bench_hermitian_eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eigen");
    for dim in [8usize, 16, 32, 64] {
        let (a, _, _) = fixture(dim);
        group.bench_function(format!("dim{dim}"), |bench| {
            bench.iter(|| hermitian_eigen(black_box(&a)).unwrap())
        });
    }
    group.finish();
}

fn bench_general_eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("general_eigen");
    for dim in [8usize, 16, 32] {
        let (a, b, _) = fixture(dim);
        let combo = a
            .matrix()
            .add(&b.matrix().scaled(Complex64::new(0.0, 1.0)));
        group.bench_function(format!("dim{dim}"), |bench| {
            bench.iter(|| general_eigen(black_box(&combo)).unwrap())
        });
    }
    group.finish();
}

fn bench_sum_identity(c: &mut Criterion) {
    let mut group = c.benchmark_group("sum_identity");
    for dim in [4usize, 16, 64] {
        let (a, b, psi) = fixture(dim);
        let basis = complement_basis(&psi);
        group.bench_function(format!("dim{dim}"), |bench| {
            bench.iter(|| sum_identity(black_box(&a), &b, &psi, &basis, Sign::Plus).unwrap())
        });
    }
    group.finish();
}

fn bench_uncertainty_report(c: &mut Criterion) {
    let (a, b, psi) = fixture(16);
    c.bench_function("uncertainty_report_dim16", |bench| {
        bench.iter(|| uncertainty_report(black_box(&a), &b, &psi).unwrap())
    });
}

fn bench_qubit_grid(c: &mut Criterion) {
    c.bench_function("grid_scan_181x361", |bench| {
        bench.iter(|| grid_scan(black_box(0.0), 181, 361).unwrap())
    });
}

fn bench_oat_sweep(c: &mut Criterion) {
    let sys = SpinSystem::new(20).unwrap();
    c.bench_function("oat_sweep_n20_21points", |bench| {
        bench.iter(|| {
            oat_sweep(
                black_box(&sys),
                std::f64::consts::FRAC_PI_2,
                0.0,
                0.0,
                0.5,
                21,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_hermitian_eigen,
    bench_general_eigen,
    bench_sum_identity,
    bench_uncertainty_report,
    bench_qubit_grid,
    bench_oat_sweep
);
criterion_main!(benches);

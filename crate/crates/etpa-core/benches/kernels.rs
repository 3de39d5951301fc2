//! Benchmarks for the data-parallel kernels, comparing the default thread
//! pool against a single-thread pool. Build with `--no-default-features` to
//! measure the rayon-free sequential fallback instead.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use etpa_core::grid::{FrequencyGrid, TimeGrid};
use etpa_core::jsa::JointSpectralAmplitude;
use etpa_core::lineshape::LorentzianLine;
use etpa_core::overlap::{antidiagonal_projection, spectral_overlap};
use etpa_core::shapes;

const N_2D: usize = 513;

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential-fallback"
    }
}

fn with_pool<T>(threads: usize, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(f)
}

fn build_jsa(n: usize) -> JointSpectralAmplitude {
    let grid = FrequencyGrid::spanning(1.77e15, 6.0e13, n).unwrap();
    let (sum_grid, diff_grid) = JointSpectralAmplitude::factored_component_grids(&grid).unwrap();
    let psi_n = shapes::gaussian_spectrum(&sum_grid, 2.0e12).unwrap();
    let psi_b = shapes::gaussian_spectrum(&diff_grid, 2.0e13).unwrap();
    JointSpectralAmplitude::from_factors(psi_n, psi_b, grid).unwrap()
}

fn bench_jsa_build(c: &mut Criterion) {
    let mut group = c.benchmark_group(format!("jsa_build/{}", mode()));
    group.sample_size(10);
    for threads in [1, 0] {
        let label = if threads == 1 { "1-thread" } else { "all-threads" };
        group.bench_function(label, |b| {
            b.iter(|| {
                let jsa = if threads == 1 {
                    with_pool(1, || build_jsa(N_2D))
                } else {
                    build_jsa(N_2D)
                };
                black_box(jsa.norm_sq())
            })
        });
    }
    group.finish();
}

fn bench_projection(c: &mut Criterion) {
    let jsa = build_jsa(N_2D);
    let mut group = c.benchmark_group(format!("antidiagonal_projection/{}", mode()));
    group.sample_size(10);
    for threads in [1, 0] {
        let label = if threads == 1 { "1-thread" } else { "all-threads" };
        group.bench_function(label, |b| {
            b.iter(|| {
                let k = if threads == 1 {
                    with_pool(1, || antidiagonal_projection(&jsa))
                } else {
                    antidiagonal_projection(&jsa)
                };
                black_box(k.norm_sq())
            })
        });
    }
    group.finish();
}

fn bench_overlap_report(c: &mut Criterion) {
    let jsa = build_jsa(N_2D);
    let line = LorentzianLine::new(2.0 * jsa.grid().center(), 1.0e13).unwrap();
    let mut group = c.benchmark_group(format!("spectral_overlap/{}", mode()));
    group.sample_size(10);
    for threads in [1, 0] {
        let label = if threads == 1 { "1-thread" } else { "all-threads" };
        group.bench_function(label, |b| {
            b.iter(|| {
                let report = if threads == 1 {
                    with_pool(1, || spectral_overlap(&jsa, &line).unwrap())
                } else {
                    spectral_overlap(&jsa, &line).unwrap()
                };
                black_box(report.eta_rad_per_s)
            })
        });
    }
    group.finish();
}

fn bench_time_transform(c: &mut Criterion) {
    let grid = FrequencyGrid::spanning(0.0, 6.0e13, 4097).unwrap();
    let amp = shapes::gaussian_spectrum(&grid, 1.0e13).unwrap();
    let tgrid = TimeGrid::spanning(2.0e-12, 2049).unwrap();
    let mut group = c.benchmark_group(format!("to_time_domain/{}", mode()));
    group.sample_size(10);
    for threads in [1, 0] {
        let label = if threads == 1 { "1-thread" } else { "all-threads" };
        group.bench_function(label, |b| {
            b.iter(|| {
                let phi = if threads == 1 {
                    with_pool(1, || amp.to_time_domain(&tgrid))
                } else {
                    amp.to_time_domain(&tgrid)
                };
                black_box(phi.norm_sq())
            })
        });
    }
    group.finish();
}

criterion_group!(
    kernels,
    bench_jsa_build,
    bench_projection,
    bench_overlap_report,
    bench_time_transform
);
criterion_main!(kernels);

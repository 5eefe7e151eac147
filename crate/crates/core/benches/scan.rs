//! Parallel vs sequential scan throughput.
//!
//! Run with `cargo bench -p bathtangle`. The `parallel` feature (default)
//! routes `scan_rows` through rayon; `scan_rows_seq` is the fallback path,
//! so one run compares both.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bathtangle::continuum::Convention;
use bathtangle::model::BathConfig;
use bathtangle::scan::{r_grid, scan_rows, scan_rows_seq};

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("d2_tangle_scan");
    group.sample_size(10);
    for &points in &[16usize, 64] {
        let cfg = BathConfig::new(2, 0.5, 1.0, 100.0, 1.0).unwrap();
        let rs = r_grid(0.05, 10.0, points, true).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", points), &points, |b, _| {
            b.iter(|| scan_rows(&cfg, None, Convention::FullLine, &rs).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", points), &points, |b, _| {
            b.iter(|| scan_rows_seq(&cfg, None, Convention::FullLine, &rs).unwrap())
        });
    }
    group.finish();
}

fn bench_ed(c: &mut Criterion) {
    use bathtangle::ed::{ed_tangle, EdModel};
    use bathtangle::model::{plane_wave_bath, uniform_grid_1d};

    let cfg = BathConfig::new(1, 0.0, 1.0, 2.0, 0.01).unwrap();
    let bath = plane_wave_bath(&cfg, 1.0, &uniform_grid_1d(0.5, 2.0)).unwrap();
    let model = EdModel::new(bath, 3).unwrap();
    c.bench_function("ed_tangle_3modes_nmax3", |b| {
        b.iter(|| ed_tangle(&model).unwrap())
    });
}

criterion_group!(benches, bench_scan, bench_ed);
criterion_main!(benches);

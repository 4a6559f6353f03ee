use std::hint::black_box;

use bicov::points::PointSet;
use bicov::specfun::bessel_k;
use bicov::validity::gram_psd_check;
use bicov::{
    d_index_numeric, dtilde_numeric, g_closed, BivariateMaternModel, BivariateModel, IndexTriple, LmcModel,
    NumericGrid, QuadratureSettings, UnivariateCorrelation,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn specfun(c: &mut Criterion) {
    let mut g = c.benchmark_group("bessel_k");
    for (nu, x) in [(0.5, 1.0), (1.3, 0.5), (2.7, 5.0), (7.9, 30.0)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("nu{nu}_x{x}")), &(nu, x), |b, &(nu, x)| {
            b.iter(|| bessel_k(black_box(nu), black_box(x)).unwrap())
        });
    }
    g.finish();
}

fn closed_g(c: &mut Criterion) {
    c.bench_function("g_closed", |b| {
        b.iter(|| g_closed(black_box(2.0), black_box(1.0), black_box(0.8)).unwrap())
    });
}

fn numeric_indices(c: &mut Criterion) {
    let exp: BivariateModel = BivariateMaternModel::exponential(0.5, [1.0, 2.0, 1.2]).unwrap().into();
    let lmc: BivariateModel = LmcModel::constrained(
        0.8,
        UnivariateCorrelation::matern(1.0, 1.5).unwrap(),
        UnivariateCorrelation::exponential(2.0).unwrap(),
    )
    .unwrap()
    .into();
    let t = IndexTriple::MARGINALS;
    let grid = NumericGrid { n_points: 10_000, ..NumericGrid::default() };
    c.bench_function("d_index_numeric/exp_10k", |b| b.iter(|| d_index_numeric(&exp, t, grid).unwrap()));
    c.bench_function("d_index_numeric/lmc_matern_10k", |b| {
        b.iter(|| d_index_numeric(&lmc, t, grid).unwrap())
    });
    let quad = QuadratureSettings::default();
    c.bench_function("dtilde_numeric/exp", |b| b.iter(|| dtilde_numeric(&exp, t, quad).unwrap()));
    c.bench_function("dtilde_numeric/lmc_matern", |b| b.iter(|| dtilde_numeric(&lmc, t, quad).unwrap()));
}

fn psd(c: &mut Criterion) {
    let model = BivariateMaternModel::exponential(0.6, [5.0, 5.0, 4.0]).unwrap();
    let mut g = c.benchmark_group("gram_psd_check");
    g.sample_size(10);
    for n in [50, 100, 200] {
        let points = PointSet::uniform(n, 2, 2.0, 42).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &points, |b, p| {
            b.iter(|| gram_psd_check(&model, p, 1e-10).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, specfun, closed_g, numeric_indices, psd);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use dualcalc::{
    darboux_sums, envelope, estimate_integral, DualFunction, DualReal, ExtremaMethod,
    Interval, IntegrateOptions, OrderKind, Partition, TypedInterval,
};

fn d(re: f64, ze: f64) -> DualReal {
    DualReal::new(re, ze).unwrap()
}

fn bench_arithmetic(c: &mut Criterion) {
    let x = d(1.7, -0.3);
    let y = d(-0.4, 2.1);
    let mut group = c.benchmark_group("arithmetic");
    group.bench_function("mul", |b| b.iter(|| black_box(x).mul(black_box(y))));
    group.bench_function("inverse", |b| b.iter(|| black_box(x).inverse().unwrap()));
    group.bench_function("norm", |b| b.iter(|| black_box(x).norm()));
    group.finish();
}

fn bench_expressions(c: &mut Criterion) {
    let src = "x * sin(x) + exp(x^2) - 0.5 / (1 + x^2)";
    let f = DualFunction::parse(src).unwrap();
    let at = d(0.8, 0.4);
    let mut group = c.benchmark_group("expressions");
    group.throughput(Throughput::Bytes(src.len() as u64));
    group.bench_function("parse", |b| b.iter(|| DualFunction::parse(black_box(src)).unwrap()));
    group.bench_function("eval", |b| b.iter(|| f.eval(black_box(at)).unwrap()));
    group.finish();
}

fn bench_envelope(c: &mut Criterion) {
    let f = DualFunction::parse("x * sin(x) + exp(x)").unwrap();
    let DualFunction::Ast(expr) = &f else { unreachable!() };
    let re = Interval::new(0.25, 0.75).unwrap();
    let ze = Interval::new(-0.5, 0.5).unwrap();
    c.bench_function("envelope", |b| {
        b.iter(|| envelope(black_box(expr), black_box(re), black_box(ze)).unwrap())
    });
}

fn bench_darboux_level(c: &mut Criterion) {
    let f = DualFunction::parse("x * sin(x)").unwrap();
    let interval = TypedInterval::new(d(0.0, 0.0), d(2.0, 1.0), OrderKind::Type1).unwrap();
    let partition = Partition::uniform(&interval, 256).unwrap();
    let mut group = c.benchmark_group("darboux_256_cells");
    group.throughput(Throughput::Elements(256));
    for method in [ExtremaMethod::Lattice { grid: 8 }, ExtremaMethod::Certified] {
        let name = match method {
            ExtremaMethod::Lattice { grid } => format!("lattice_{grid}"),
            ExtremaMethod::Certified => "certified".to_string(),
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &method, |b, &m| {
            b.iter(|| darboux_sums(black_box(&f), black_box(&partition), m).unwrap())
        });
    }
    group.finish();
}

fn bench_estimate(c: &mut Criterion) {
    let f = DualFunction::parse("sin(x)").unwrap();
    let interval = TypedInterval::new(d(0.0, 0.0), d(1.0, 0.5), OrderKind::Type1).unwrap();
    let options = IntegrateOptions { tol: 1e-2, ..IntegrateOptions::default() };
    c.bench_function("estimate_integral_tol_1e-2", |b| {
        b.iter(|| estimate_integral(black_box(&f), black_box(&interval), &options).unwrap())
    });
}

criterion_group!(
    benches,
    bench_arithmetic,
    bench_expressions,
    bench_envelope,
    bench_darboux_level,
    bench_estimate
);
criterion_main!(benches);

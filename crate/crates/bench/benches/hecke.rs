use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parahoric_bench::Workload;
use parahoric_core::hecke::{Basis, HeckeAlgebra};
use parahoric_core::satake::{LeviDatum, SatakeTransform};
use std::hint::black_box;

fn weyl(c: &mut Criterion) {
    let mut group = c.benchmark_group("weyl");
    for spec in ["A2", "C2", "G2"] {
        let w = Workload::new(spec, 6);
        let top = w.of_length(6);
        group.bench_function(BenchmarkId::new("length", spec), |b| {
            b.iter(|| w.elements.iter().map(|x| w.group.length(x)).sum::<usize>())
        });
        group.bench_function(BenchmarkId::new("bruhat_leq", spec), |b| {
            b.iter(|| top.iter().filter(|x| w.group.bruhat_leq(black_box(&w.elements[7]), x)).count())
        });
        group.bench_function(BenchmarkId::new("reduced_word", spec), |b| {
            b.iter(|| top.iter().map(|x| w.group.reduced_word(x).0.len()).sum::<usize>())
        });
        group.bench_function(BenchmarkId::new("lower_interval", spec), |b| {
            b.iter(|| w.group.lower_bruhat_interval(black_box(top[0])).unwrap().len())
        });
    }
    group.finish();
}

fn convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolution");
    for spec in ["A2", "C2"] {
        let w = Workload::new(spec, 4);
        let h = HeckeAlgebra::new(&w.group, w.group.iwahori(), 3).unwrap();
        let classes: Vec<_> = w.of_length(4).into_iter().map(|x| h.class_of(x)).collect();
        group.bench_function(BenchmarkId::new("phi_classes", spec), |b| {
            b.iter(|| {
                for x in &classes {
                    for y in &classes {
                        black_box(h.convolve_phi_classes(x, y));
                    }
                }
            })
        });
        let a = h.element(Basis::Phi, classes.iter().map(|x| (x.clone(), 1)));
        group.bench_function(BenchmarkId::new("to_indicator", spec), |b| {
            b.iter(|| h.to_basis(black_box(&a), Basis::Indicator).unwrap())
        });
    }
    group.finish();
}

fn satake(c: &mut Criterion) {
    let mut group = c.benchmark_group("satake");
    for spec in ["A2", "C2"] {
        let w = Workload::new(spec, 6);
        let f = w.group.hyperspecial_vertex();
        let h = HeckeAlgebra::new(&w.group, f.clone(), 3).unwrap();
        let classes: Vec<_> = w.of_length(6).into_iter().map(|x| h.class_of(x)).collect();
        let s = SatakeTransform::new(&w.group, f, LeviDatum::minimal(&w.group), 3).unwrap();
        group.bench_function(BenchmarkId::new("general", spec), |b| {
            b.iter(|| classes.iter().map(|x| s.satake_phi(x).unwrap().terms().len()).sum::<usize>())
        });
        group.bench_function(BenchmarkId::new("special", spec), |b| {
            b.iter(|| classes.iter().map(|x| s.special_satake_phi(x).unwrap().terms().len()).sum::<usize>())
        });
        let iw = SatakeTransform::new(&w.group, w.group.iwahori(), LeviDatum::minimal(&w.group), 3).unwrap();
        let iw_classes: Vec<_> = w.of_length(5).into_iter().map(|x| w.group.double_coset_rep(x, iw.facet())).collect();
        group.bench_function(BenchmarkId::new("closed_chains_iwahori", spec), |b| {
            b.iter(|| iw_classes.iter().map(|x| iw.enumerate_closed_chains(x).unwrap().len()).sum::<usize>())
        });
    }
    group.finish();
}

criterion_group!(benches, weyl, convolution, satake);
criterion_main!(benches);

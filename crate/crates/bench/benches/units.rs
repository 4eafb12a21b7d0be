use std::sync::Arc;

use burnside_bench::bench_groups;
use burnside_core::biset::RingCache;
use burnside_core::genetics::genetic_basis;
use burnside_core::units::{enumerate_units_bruteforce, exp_image, units_via_genetic_basis, DEFAULT_BUDGET};
use burnside_core::{BurnsideRing, SubgroupLattice, TableOfMarks};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    for (name, g) in bench_groups() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| SubgroupLattice::new(black_box(g.clone())).unwrap())
        });
    }
    group.finish();
}

fn marks(c: &mut Criterion) {
    let mut group = c.benchmark_group("table_of_marks");
    for (name, g) in bench_groups() {
        let l = SubgroupLattice::new(g).unwrap();
        group.bench_function(name, |b| b.iter(|| TableOfMarks::compute(black_box(&l))));
    }
    group.finish();
}

fn units(c: &mut Criterion) {
    let cache = RingCache::default();
    let mut brute = c.benchmark_group("units_brute");
    let rings: Vec<(&str, Arc<BurnsideRing>)> =
        bench_groups().into_iter().map(|(n, g)| (n, cache.ring(&g).unwrap())).collect();
    for (name, ring) in &rings {
        brute.bench_function(*name, |b| {
            b.iter(|| enumerate_units_bruteforce(black_box(ring), DEFAULT_BUDGET).unwrap())
        });
    }
    brute.finish();

    let mut genetic = c.benchmark_group("units_genetic");
    for (name, ring) in &rings {
        genetic.bench_function(*name, |b| {
            b.iter(|| {
                let gb = genetic_basis(ring.lattice()).unwrap();
                units_via_genetic_basis(ring, &gb, &cache).unwrap()
            })
        });
    }
    genetic.finish();

    let mut exp = c.benchmark_group("exp_image");
    for (name, ring) in &rings {
        exp.bench_function(*name, |b| b.iter(|| exp_image(black_box(ring), &cache).unwrap()));
    }
    exp.finish();
}

criterion_group!(benches, lattice, marks, units);
criterion_main!(benches);

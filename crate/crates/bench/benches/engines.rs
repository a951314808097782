use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use starlike_bench::affine_instance;
use starlike_core::graphs::{intersection_arrays, local_distance_transitivity, predicted_arrays};
use starlike_core::incidence::is_pairwise_transitive;
use starlike_core::PermGroup;

fn bsgs(c: &mut Criterion) {
    let inst = affine_instance(3, 3);
    let gens = inst.g.generators().to_vec();
    c.bench_function("bsgs AGL(3,3) on points and blocks", |b| {
        b.iter(|| PermGroup::new(gens[0].degree(), black_box(gens.clone())).unwrap().order())
    });
}

fn pairwise(c: &mut Criterion) {
    let inst = affine_instance(3, 2);
    c.bench_function("pairwise transitivity AG(3,2)", |b| {
        b.iter(|| is_pairwise_transitive(black_box(&inst.design), &inst.g).unwrap().overall)
    });
}

fn distance(c: &mut Criterion) {
    let inst = affine_instance(3, 3);
    let graph = inst.graph();
    c.bench_function("local distance transitivity AG(3,3), s = 4", |b| {
        b.iter(|| local_distance_transitivity(graph.graph(), black_box(&inst.g), 4).unwrap().holds)
    });
    c.bench_function("intersection arrays AG(3,3)", |b| b.iter(|| intersection_arrays(black_box(&graph)).unwrap()));
}

fn scan(c: &mut Criterion) {
    c.bench_function("predicted arrays over k, l, r <= 40", |b| {
        b.iter(|| {
            let mut feasible = 0;
            for k in 2..=40 {
                for l in 2..=40 {
                    for r in 3..=40 {
                        feasible += predicted_arrays(k, l, r).unwrap().feasible as usize;
                    }
                }
            }
            feasible
        })
    });
}

criterion_group!(benches, bsgs, pairwise, distance, scan);
criterion_main!(benches);

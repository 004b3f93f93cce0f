use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use starsep::detect::{class_membership, Variant};
use starsep::generators::{make, sample_grown, NamedGraph};
use starsep::separator::main_separator;
use starsep::treewidth::certify;
use starsep::{Graph, WeightFn};

fn inputs() -> Vec<(String, Graph)> {
    let mut out = vec![("W93".to_string(), make(&NamedGraph::W93).unwrap())];
    for n in [12, 16, 20] {
        out.push((format!("grown{n}"), sample_grown(n, 4, n as u64, Variant::Ct).unwrap().graph));
    }
    out
}

fn pipeline(c: &mut Criterion) {
    let inputs = inputs();
    let mut group = c.benchmark_group("recognize");
    for (name, g) in &inputs {
        group.bench_with_input(BenchmarkId::from_parameter(name), g, |b, g| {
            b.iter(|| class_membership(black_box(g), 4, Variant::Ct).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("separator");
    for (name, g) in &inputs {
        let w = WeightFn::uniform(g);
        group.bench_with_input(BenchmarkId::from_parameter(name), g, |b, g| {
            b.iter(|| main_separator(black_box(g), &w, 4).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    for (name, g) in &inputs {
        group.bench_with_input(BenchmarkId::from_parameter(name), g, |b, g| {
            b.iter(|| certify(black_box(g), 4, Variant::Ct).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);

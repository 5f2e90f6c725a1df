use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use catkernel::analysis::classify_morphism;
use catkernel::construct::arrow_category;
use catkernel::fibration::{predicate_fibration, profile};
use catkernel::instances::{finset, Maybe, Sets};
use catkernel::lawcheck::{run_suite, suite, Bounds, Target};
use catkernel::monad::em_category;
use catkernel::slice::{slice_ccc, SliceContext};
use catkernel::structures::choose_cartesian_structure;

fn build(c: &mut Criterion) {
    c.bench_function("finset(3) tables", |b| b.iter(|| finset(3).unwrap()));
    let inst = finset(3).unwrap();
    c.bench_function("finset(3) chosen structure", |b| b.iter(|| choose_cartesian_structure(&inst.cat)));
    c.bench_function("finset(3) classify every morphism", |b| b.iter(|| inst.cat.morphisms().filter(|&f| classify_morphism(&inst.cat, f).mono).count()));
    let two = Arc::new(finset(2).unwrap());
    c.bench_function("finset(2) arrow category", |b| b.iter(|| arrow_category(&two.cat).unwrap()));
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    let inst = finset(3).unwrap();
    let model = inst.model();
    let product = suite("product").unwrap();
    g.bench_function("product on finset(3)", |b| b.iter(|| run_suite(&Target::new(&model), &product, &Bounds::unbounded()).unwrap()));
    let s = Sets::new(3);
    let monad = suite("monad").unwrap();
    g.bench_function("monad laws for Maybe", |b| b.iter(|| run_suite(&Target::with_monad(&s, &Maybe), &monad, &Bounds::unbounded()).unwrap()));
    g.finish();
}

fn structure(c: &mut Criterion) {
    let mut g = c.benchmark_group("structure");
    g.sample_size(10);
    let inst = Arc::new(finset(3).unwrap());
    let three = inst.obj(3).unwrap();
    g.bench_function("slice over 3 in finset(3)", |b| {
        b.iter(|| {
            // fresh context so memoized pullbacks are rebuilt
            let ctx = SliceContext::finset(inst.clone());
            slice_ccc(&ctx, three).unwrap()
        })
    });
    let two = finset(2).unwrap();
    let p = predicate_fibration(&two).unwrap();
    g.bench_function("predicate fibration profile", |b| b.iter(|| profile(&p).unwrap()));
    let s = Sets::new(3);
    g.bench_function("Maybe algebras on 0..=3", |b| b.iter(|| em_category(&s, &Maybe, &[0, 1, 2, 3]).unwrap()));
    g.finish();
}

criterion_group!(benches, build, suites, structure);
criterion_main!(benches);

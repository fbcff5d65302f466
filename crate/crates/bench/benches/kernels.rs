use criterion::{black_box, criterion_group, criterion_main, Criterion};

use lls_bench::{integer_matrix, poly_matrix};
use lls_core::degree_graph::{enumerate_bar_gii, minimal_path_ii};
use lls_core::detloci::vanishing_chain;
use lls_core::fixtures;
use lls_core::genericity::SearchOptions;
use lls_core::prelinked::{example_a6, tangent_dimension};
use lls_core::series::eht::kernel_dimension_table;
use lls_core::series::eht_to_linked;
use lls_core::series::witness::check_constrained;

fn linear_algebra(c: &mut Criterion) {
    let m = integer_matrix(1, 10, 14);
    c.bench_function("kernel 10x14", |b| b.iter(|| black_box(&m).kernel()));
    let f = poly_matrix(2, 3);
    c.bench_function("vanishing chain 3x3 over Q[t]", |b| b.iter(|| vanishing_chain(black_box(&f))));
}

fn series(c: &mut Criterion) {
    let s = fixtures::bad_compare_eht();
    c.bench_function("kernel table, three components", |b| b.iter(|| kernel_dimension_table(black_box(&s)).unwrap()));
    let chain = fixtures::chain_full_interior();
    c.bench_function("refined to linked", |b| b.iter(|| eht_to_linked(black_box(&chain)).unwrap()));
    c.bench_function("constrained witness search", |b| {
        b.iter(|| check_constrained(black_box(&chain), SearchOptions::default()).unwrap())
    });
    let cfg = s.cfg().clone();
    let bar = enumerate_bar_gii(&cfg);
    c.bench_function("minimal paths across the window", |b| {
        b.iter(|| {
            for w in &bar {
                for w2 in &bar {
                    black_box(minimal_path_ii(&cfg, w, w2).unwrap());
                }
            }
        })
    });
}

fn prelinked(c: &mut Criterion) {
    let (data, point) = example_a6();
    c.bench_function("tangent dimension, four vertices", |b| b.iter(|| tangent_dimension(black_box(&data), &point).unwrap()));
}

criterion_group!(benches, linear_algebra, series, prelinked);
criterion_main!(benches);

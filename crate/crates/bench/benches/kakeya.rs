use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kakeya_bench::greedy_set;
use kakeya_core::{
    is_kakeya, minimal_kakeya_exact, vanishing_polynomial, DegreeMode, FieldSpec, PointSet, SearchLimits,
};

fn verify(c: &mut Criterion) {
    let k = greedy_set("7", 3);
    c.bench_function("is_kakeya GF(7)^3 greedy", |b| b.iter(|| is_kakeya(black_box(&k))));
}

fn elimination(c: &mut Criterion) {
    let f = FieldSpec::parse("7").unwrap();
    let k = PointSet::from_values(&f, 2, &(0..20).map(|i| vec![i % 7, (i * 3) % 7]).collect::<Vec<_>>())
        .unwrap();
    c.bench_function("vanishing polynomial deg<=6 GF(7)^2", |b| {
        b.iter(|| vanishing_polynomial(black_box(&k), 6, DegreeMode::AtMost))
    });
}

fn search(c: &mut Criterion) {
    let f = FieldSpec::parse("5").unwrap();
    let limits = SearchLimits::default();
    c.bench_function("exact search GF(5)^2", |b| b.iter(|| minimal_kakeya_exact(&f, 2, &limits)));
}

criterion_group!(benches, verify, elimination, search);
criterion_main!(benches);

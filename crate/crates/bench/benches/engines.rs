use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hurwitz_core::chambers::{chamber_of, fit_polynomial};
use hurwitz_core::cutjoin::{build_q, evolve, power_sum_seed};
use hurwitz_core::fock::vev_fock;
use hurwitz_core::hurwitz::{h_char, HurwitzQuery};
use hurwitz_core::intersection::g_series;
use hurwitz_core::partitions::{part, CharacterTable};
use hurwitz_core::wedge::hurwitz_patterns;
use hurwitz_core::Rational;
use std::hint::black_box;

fn engines(c: &mut Criterion) {
    let mu = part(&[3, 2]);
    let nu = part(&[2, 2, 1]);
    for d in 1..=5 {
        CharacterTable::build(d).install();
    }
    let mut g = c.benchmark_group("h^{2,3}_{(3,2),(2,2,1)}");
    g.bench_function("char", |b| {
        let q = HurwitzQuery::new(2, 3, mu.clone(), nu.clone(), false).unwrap();
        b.iter(|| h_char(black_box(&q)).unwrap())
    });
    g.bench_function("fock", |b| b.iter(|| vev_fock(2, 3, black_box(&mu), &nu).unwrap()));
    g.bench_function("patterns", |b| {
        b.iter(|| hurwitz_patterns(2, 3, black_box(&mu), &nu).unwrap())
    });
    g.finish();
}

fn character_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("character_table");
    for d in [6u32, 8, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| CharacterTable::build(black_box(d)))
        });
    }
    g.finish();
}

fn cut_and_join(c: &mut Criterion) {
    let mut g = c.benchmark_group("cut_and_join");
    g.bench_function("build Q_3 weight 8", |b| b.iter(|| build_q(black_box(3), 8).unwrap()));
    let q = build_q(3, 6).unwrap();
    let seed = power_sum_seed::<Rational>(6);
    g.bench_function("evolve Q_3 order 4", |b| {
        b.iter(|| evolve(&q, 4, black_box(&seed)).unwrap())
    });
    g.finish();
}

fn polynomiality(c: &mut Criterion) {
    let chamber = chamber_of(&[3, 1], &[2, 2]).unwrap();
    let mut g = c.benchmark_group("chambers");
    g.sample_size(10);
    g.bench_function("fit r=1 s=2", |b| b.iter(|| fit_polynomial(1, 2, black_box(&chamber)).unwrap()));
    g.finish();
}

fn intersection(c: &mut Criterion) {
    let mut g = c.benchmark_group("intersection");
    g.sample_size(10);
    g.bench_function("G r=1 weight 5", |b| b.iter(|| g_series(black_box(1), 5, 4).unwrap()));
    g.finish();
}

criterion_group!(benches, engines, character_tables, cut_and_join, polynomiality, intersection);
criterion_main!(benches);

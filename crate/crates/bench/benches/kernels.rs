use criterion::{criterion_group, criterion_main, Criterion};
use cyclecalc::bloch::sweep_boundary_regulators;
use cyclecalc::cycle::serre_multiplicity;
use cyclecalc::en::{build_en, nerve_homology};
use cyclecalc::forms::{bz_slice, FiniteField, FpAlgebra};
use cyclecalc::groebner::groebner_polys;
use cyclecalc::symbols::symbol_reduce;
use cyclecalc_bench::{ideal, ring, sample_symbol, two_planes};

fn groebner(c: &mut Criterion) {
    let r = ring(&["x", "y", "z"]);
    let gens = ideal(&r, &["x^2 + y*z - 1", "x*y - z^2 + 2", "y^3 - x*z"]).gens().to_vec();
    c.bench_function("groebner 3 vars", |b| b.iter(|| groebner_polys(&r, &gens).unwrap()));
}

fn serre(c: &mut Criterion) {
    let (x, i, j, p) = two_planes();
    c.bench_function("serre two planes", |b| b.iter(|| serre_multiplicity(&x, &i, &j, &p).unwrap()));
}

fn regulator(c: &mut Criterion) {
    c.bench_function("regulator sweep F_5 deg 2", |b| b.iter(|| sweep_boundary_regulators(5, 2)));
}

fn symbols(c: &mut Criterion) {
    let s = sample_symbol();
    c.bench_function("symbol reduce weight 3", |b| b.iter(|| symbol_reduce(&s).unwrap()));
}

fn forms(c: &mut Criterion) {
    let fp = FiniteField::prime(2).unwrap();
    let alg = FpAlgebra::polynomial(&fp, &["x", "y"]).unwrap();
    c.bench_function("B, Z slice F_2[x,y] deg 8", |b| b.iter(|| bz_slice(&alg, 1, 8).unwrap()));
}

fn combinatorics(c: &mut Criterion) {
    c.bench_function("build E_3", |b| b.iter(|| build_en(3).unwrap()));
    let e2 = build_en(2).unwrap();
    c.bench_function("nerve homology E_2", |b| b.iter(|| nerve_homology(&e2.category, 2).unwrap()));
}

criterion_group!(benches, groebner, serre, regulator, symbols, forms, combinatorics);
criterion_main!(benches);

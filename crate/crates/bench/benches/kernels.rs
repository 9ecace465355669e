use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use cherednik::quasi::QuasiInvariantRing;
use cherednik::shift::shift_operator;
use cherednik::symmetric::{character_table, lattice_restriction_character};
use cherednik::{CartanType, GroupData, Multiplicity, RootSystem};

fn setup(label: CartanType, rank: usize, c: &str) -> (RootSystem, GroupData, Multiplicity) {
    let rs = RootSystem::new(label, rank).unwrap();
    let gd = GroupData::new(&rs).unwrap();
    let c = Multiplicity::parse(&rs, c).unwrap();
    (rs, gd, c)
}

fn qc_basis(c: &mut Criterion) {
    let (rs, gd, m) = setup(CartanType::A, 2, "1");
    c.bench_function("qc_basis A2 c=1 deg 6", |b| {
        b.iter(|| QuasiInvariantRing::new(black_box(&rs), &gd, &m, 6).unwrap())
    });
    let (rs, gd, m) = setup(CartanType::B, 2, "1,1");
    c.bench_function("qc_basis B2 c=(1,1) deg 6", |b| {
        b.iter(|| QuasiInvariantRing::new(black_box(&rs), &gd, &m, 6).unwrap())
    });
}

fn shift(c: &mut Criterion) {
    let (rs, gd, m) = setup(CartanType::A, 1, "2");
    c.bench_function("shift_operator A1 c=2", |b| b.iter(|| shift_operator(black_box(&rs), &gd, &m).unwrap()));
    let (rs, gd, m) = setup(CartanType::A, 2, "1");
    c.bench_function("shift_operator A2 c=1", |b| b.iter(|| shift_operator(black_box(&rs), &gd, &m).unwrap()));
}

fn symmetric(c: &mut Criterion) {
    c.bench_function("character_table S8", |b| b.iter(|| character_table(black_box(8))));
    c.bench_function("lattice_restriction n=4 r=4", |b| {
        b.iter(|| lattice_restriction_character(black_box(4), 4).unwrap())
    });
}

fn groups(c: &mut Criterion) {
    let rs = RootSystem::new(CartanType::D, 4).unwrap();
    c.bench_function("group_data D4", |b| b.iter(|| GroupData::new(black_box(&rs)).unwrap()));
}

criterion_group!(
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = qc_basis, shift, symmetric, groups
);
criterion_main!(benches);

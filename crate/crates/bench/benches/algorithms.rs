use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use regmap::census::{enumerate_maps, CensusQuery, GroupSpec};
use regmap::constructions::l2q_map;
use regmap::linfrac::order_from_trace;
use regmap::mapcore::classify;
use regmap::permgroup::group_order;
use regmap::FieldSpec;

fn field_and_groups(c: &mut Criterion) {
    let g = FieldSpec::new(24).unwrap();
    let xs: Vec<_> = (1..=64u64)
        .map(|i| g.element(i * 0x9e3779 % g.q()))
        .collect();
    c.bench_function("order_from_trace/GF(2^24) x64", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| order_from_trace(black_box(x)))
                .sum::<u64>()
        })
    });

    let gens = "l2p:13".parse::<GroupSpec>().unwrap().generators().unwrap();
    c.bench_function("group_order/L2(13)", |b| {
        b.iter(|| group_order(black_box(&gens)).unwrap())
    });
    let gens = "sym:9".parse::<GroupSpec>().unwrap().generators().unwrap();
    c.bench_function("group_order/S9", |b| {
        b.iter(|| group_order(black_box(&gens)).unwrap())
    });
}

fn maps(c: &mut Criterion) {
    let w = l2q_map(FieldSpec::new(3).unwrap().generator()).unwrap();
    c.bench_function("classify/L2(8) class III", |b| {
        b.iter(|| classify(black_box(&w)).unwrap())
    });

    let gens = "l2q:3".parse::<GroupSpec>().unwrap().generators().unwrap();
    let q = CensusQuery::new(gens).with_type("9,9,9".parse().unwrap());
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    group.bench_function("L2(8) type 9,9,9", |b| {
        b.iter(|| enumerate_maps(black_box(&q)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, field_and_groups, maps);
criterion_main!(benches);

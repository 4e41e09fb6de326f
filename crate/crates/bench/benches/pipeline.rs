use criterion::{criterion_group, criterion_main, Criterion};

use ctperiod::cluster::{StableEnd, periodic_object_check};
use ctperiod::mfcat::{bikr_tilting, brute_hom_stabilized, mf_stable_hom, Curve};
use ctperiod::periodicity::detect_period;
use ctperiod_bench::{bikr, f5, preprojective, truncated_auslander};

fn period(c: &mut Criterion) {
    let a2 = preprojective(2);
    c.bench_function("detect_period Π(A₂)", |b| b.iter(|| detect_period(&a2, 12, 0).unwrap()));
    let a3 = preprojective(3);
    c.bench_function("detect_period Π(A₃)", |b| b.iter(|| detect_period(&a3, 12, 0).unwrap()));
    let t = bikr(&["x", "y", "x+y"], 2);
    let end = StableEnd::compute(&t).unwrap();
    c.bench_function("detect_period BIKR xy(x+y)", |b| b.iter(|| detect_period(&end.gamma, 12, 0).unwrap()));
}

fn stable_end(c: &mut Criterion) {
    let t = truncated_auslander(3, 1);
    c.bench_function("stable end k[x]/(x³)", |b| b.iter(|| StableEnd::compute(&t).unwrap()));
    let t = bikr(&["x", "y", "x+y", "x+2*y"], 2);
    c.bench_function("stable end BIKR four lines", |b| b.iter(|| StableEnd::compute(&t).unwrap()));
    let end = StableEnd::compute(&t).unwrap();
    c.bench_function("twist BIKR four lines", |b| b.iter(|| periodic_object_check(&t, &end).unwrap()));
}

fn stable_hom(c: &mut Criterion) {
    let curve = Curve::parse(f5(), &["x", "y", "x+y", "x+2*y"]).unwrap();
    let t = bikr_tilting(&curve).unwrap();
    let (m, n) = (&t[0], &t[1]);
    c.bench_function("mf_stable_hom colon ideal", |b| b.iter(|| mf_stable_hom(m, n).unwrap()));
    c.bench_function("mf_stable_hom brute force", |b| b.iter(|| brute_hom_stabilized(m, n).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = period, stable_end, stable_hom
}
criterion_main!(benches);

//! Microbenchmarks for the three operations everything else is built from:
//! Buchberger's algorithm, ideal intersection, and symbolic powers.
//!
//! Ideals memoize their own Gröbner bases and symbolic powers, so each
//! iteration that would otherwise hit a warm cache rebuilds its input from
//! plain generators (fresh caches) inside `iter_batched`.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;
use symlab_core::{
    buchberger, configuration_ideal, fermat_ideal, point_ideal, random_points, symbolic_power,
    Field, Ideal, MonomialOrder, Rationals, Ring,
};

fn plane_ring() -> Ring<Rationals> {
    Ring::new(3, Rationals, MonomialOrder::DegRevLex)
}

fn bench_buchberger(c: &mut Criterion) {
    let ring = plane_ring();
    let fermat = fermat_ideal(&ring, 3).expect("fermat ideal");
    let gens = fermat.generators().to_vec();
    c.bench_function("buchberger/fermat-n3", |b| {
        b.iter(|| buchberger(&ring, black_box(&gens)).expect("terminates"))
    });

    let config = random_points(&Rationals, 4, 2, 7, 50).expect("points");
    let ideal = configuration_ideal(&ring, &config).expect("ideal");
    let point_gens = ideal.generators().to_vec();
    c.bench_function("buchberger/four-plane-points", |b| {
        b.iter(|| buchberger(&ring, black_box(&point_gens)).expect("terminates"))
    });
}

fn bench_intersect(c: &mut Criterion) {
    let ring = plane_ring();
    let f = Rationals;
    let p = point_ideal(&ring, &[f.from_i64(1), f.from_i64(2), f.from_i64(1)]).expect("point");
    let q = point_ideal(&ring, &[f.from_i64(-3), f.from_i64(1), f.from_i64(1)]).expect("point");
    let p_gens = p.generators().to_vec();
    let q_gens = q.generators().to_vec();
    c.bench_function("intersect/two-plane-points", |b| {
        b.iter_batched(
            || {
                (
                    Ideal::new(&ring, p_gens.clone()).expect("ideal"),
                    Ideal::new(&ring, q_gens.clone()).expect("ideal"),
                )
            },
            |(a, b)| a.intersect(&b).expect("intersection"),
            BatchSize::SmallInput,
        )
    });
}

fn bench_symbolic_power(c: &mut Criterion) {
    let ring = plane_ring();
    let config = random_points(&Rationals, 3, 2, 7, 50).expect("points");
    let template = configuration_ideal(&ring, &config).expect("ideal");
    let gens = template.generators().to_vec();
    let kind = template.kind().clone();
    c.bench_function("symbolic_power/three-plane-points-m2", |b| {
        b.iter_batched(
            || {
                Ideal::new(&ring, gens.clone())
                    .expect("ideal")
                    .with_kind(kind.clone())
            },
            |i| symbolic_power(&i, 2).expect("symbolic power"),
            BatchSize::SmallInput,
        )
    });
}

criterion_group! {
    name = engine;
    config = Criterion::default().sample_size(20);
    targets = bench_buchberger, bench_intersect, bench_symbolic_power
}
criterion_main!(engine);

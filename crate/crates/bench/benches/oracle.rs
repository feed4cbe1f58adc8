use adsorb_core::oracle::{exact_center_density, exact_gamma, for_each_order};
use adsorb_core::TimePoint;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let t = TimePoint::new(0.3).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for radius in [2usize, 3, 4] {
        group.bench_with_input(BenchmarkId::new("center_density", radius), &radius, |b, &r| {
            b.iter(|| exact_center_density(black_box(r), t).unwrap())
        });
    }
    group.bench_function("gamma/r3_s2", |b| b.iter(|| exact_gamma(3, black_box(2), t).unwrap()));
    group.bench_function("orders/n8", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for_each_order(black_box(8), |_, _, occ| acc += occ as u64).unwrap();
            acc
        })
    });
    group.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hsym_core::mub::{generate_mubs, verify_family, MUB_TOL};

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("mub_generate");
    group.sample_size(10);
    for (p, n) in [(2u64, 3u32), (3, 2), (5, 2), (2, 5)] {
        group.bench_function(format!("{p}^{n}"), |b| b.iter(|| generate_mubs(black_box(p), black_box(n)).unwrap()));
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("mub_verify");
    group.sample_size(10);
    for (p, n) in [(3u64, 2u32), (2, 4)] {
        let family = generate_mubs(p, n).unwrap();
        group.bench_function(format!("{p}^{n}"), |b| b.iter(|| verify_family(black_box(&family), MUB_TOL).pass));
    }
    group.finish();
}

criterion_group!(benches, generation, verification);
criterion_main!(benches);

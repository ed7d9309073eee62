//! Batch composition on a single-thread pool versus the default rayon pool.
//!
//! Build with `--no-default-features` to time the plain sequential path instead.

use criterion::{criterion_group, criterion_main, Criterion};
use rulealg::catalog::{hw_compose_closed_form, hw_element, structural_graphs};
use rulealg::verify::{verify_hw_rules, verify_structural};
use rulealg::{compose_d, RewritingType};

fn hw_sweep() -> usize {
    let mut n = 0;
    for i in 0..729usize {
        let v: Vec<usize> = (0..6).map(|k| (i / 3usize.pow(k)) % 3).collect();
        let got = compose_d(&hw_element(v[0], v[1], v[2]), &hw_element(v[3], v[4], v[5]));
        n += usize::from(got == hw_compose_closed_form(v[0], v[1], v[2], v[3], v[4], v[5]));
    }
    n
}

fn batches() -> usize {
    let graphs: Vec<_> = structural_graphs().into_iter().filter(|(_, g)| g.vertex_count() <= 4).collect();
    verify_structural(&graphs).checks.len() + verify_hw_rules(RewritingType::SpoAb, 3).checks.len()
}

fn bench(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let pool = rayon::ThreadPoolBuilder::new().build().unwrap();
    let mut group = c.benchmark_group("compose");
    group.sample_size(10);
    group.bench_function("hw_sweep/1-thread", |b| b.iter(|| single.install(hw_sweep)));
    group.bench_function("hw_sweep/pool", |b| b.iter(|| pool.install(hw_sweep)));
    group.bench_function("batches/1-thread", |b| b.iter(|| single.install(batches)));
    group.bench_function("batches/pool", |b| b.iter(|| pool.install(batches)));
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);

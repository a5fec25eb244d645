use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_rational::BigRational;
use spectra_core::cf::Expansion;
use spectra_core::dimension::{eq32_verify, hd_bounds};
use spectra_core::graph::TransitionGraph;
use spectra_core::spectra::{prune_words, splice_theta, ChainLink, SpliceConfig};
use spectra_core::RadicalSum;

fn dimension(c: &mut Criterion) {
    let g = TransitionGraph::full_shift(2, 1);
    c.bench_function("hd_bounds C2 depth 10", |b| b.iter(|| hd_bounds(black_box(&g), 10).unwrap()));
}

fn pruning(c: &mut Criterion) {
    let t = RadicalSum::from_rational(BigRational::new(32.into(), 10.into()));
    let eps = BigRational::new(1.into(), 100.into());
    c.bench_function("prune_words N=2 t=3.2 ell=6", |b| b.iter(|| prune_words(2, black_box(&t), &eps, 6).unwrap()));
}

fn branch_sums(c: &mut Criterion) {
    c.bench_function("eq32_verify m=1..8", |b| {
        b.iter(|| (1..=8).map(|m| eq32_verify(m, 0.49).passed).all(|p| p))
    });
}

fn splicing(c: &mut Criterion) {
    let chain: Vec<ChainLink> = [3u32, 4]
        .iter()
        .map(|&n| ChainLink::new(&TransitionGraph::full_shift(n, 1)).unwrap())
        .collect();
    let base = Expansion::periodic(0, vec![], vec![1]);
    let cfg = SpliceConfig { r0: Some(3) };
    c.bench_function("splice_theta 400k", |b| {
        b.iter(|| splice_theta(black_box(&base), &chain, 400_000, &cfg).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = dimension, pruning, branch_sums, splicing
}
criterion_main!(benches);

//! Compares the evaluation strategies: the parallel default against the
//! sequential fallback, and block sums against dense evaluation as the
//! graphs grow.
//!
//! Run with `cargo bench -p blockdet`; add `--no-default-features` to time
//! the build without rayon (the `*_par` benches disappear).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use blockdet::bpartition::{det_via_bpartitions_seq, per_via_bpartitions_seq};
use blockdet::exact::{det_exact, per_exact_seq};
use blockdet::generators::{gen_random_block_graph, gen_random_digraph, FamilySpec};
use blockdet::{block_decompose, BlockDecomposition, SignedDigraph};

fn permanent_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("permanent-scan");
    group.sample_size(10);
    for n in [12usize, 14, 16] {
        let g = gen_random_digraph(99, n, 0.7, &[1, -1, 2], false);
        group.bench_with_input(BenchmarkId::new("seq", n), &g, |b, g| {
            b.iter(|| per_exact_seq(g).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", n), &g, |b, g| {
            b.iter(|| blockdet::exact::per_exact_par(g).unwrap())
        });
    }
    group.finish();
}

/// A chain of complete blocks: many cut vertices, so the block sum has
/// plenty of partitions to fan out over.
fn clique_chain(blocks: usize, size: usize) -> (SignedDigraph, BlockDecomposition) {
    let spec = FamilySpec::BlockGraph {
        sizes: vec![size; blocks],
        attach: Vec::new(),
    };
    let g = spec.generate().unwrap();
    let d = block_decompose(&g).unwrap();
    (g, d)
}

fn block_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("block-sum");
    group.sample_size(10);
    for blocks in [6usize, 9, 12] {
        let (g, d) = clique_chain(blocks, 4);
        group.bench_with_input(
            BenchmarkId::new("det-seq", blocks),
            &(&g, &d),
            |b, (g, d)| b.iter(|| det_via_bpartitions_seq(g, d).unwrap()),
        );
        #[cfg(feature = "parallel")]
        group.bench_with_input(
            BenchmarkId::new("det-par", blocks),
            &(&g, &d),
            |b, (g, d)| b.iter(|| blockdet::bpartition::det_via_bpartitions_par(g, d).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("per-seq", blocks),
            &(&g, &d),
            |b, (g, d)| b.iter(|| per_via_bpartitions_seq(g, d).unwrap()),
        );
        #[cfg(feature = "parallel")]
        group.bench_with_input(
            BenchmarkId::new("per-par", blocks),
            &(&g, &d),
            |b, (g, d)| b.iter(|| blockdet::bpartition::per_via_bpartitions_par(g, d).unwrap()),
        );
    }
    group.finish();
}

/// Where the block sum overtakes dense evaluation: same graphs, both
/// methods, growing order.
fn crossover(c: &mut Criterion) {
    let mut group = c.benchmark_group("block-sum-vs-dense");
    group.sample_size(10);
    for max_n in [8usize, 12, 16] {
        let g = gen_random_block_graph(2024 + max_n as u64, max_n, &[1, -1]);
        let d = block_decompose(&g).unwrap();
        let label = format!("n{}", g.n());
        group.bench_with_input(BenchmarkId::new("dense-det", &label), &g, |b, g| {
            b.iter(|| det_exact(g))
        });
        group.bench_with_input(
            BenchmarkId::new("block-det", &label),
            &(&g, &d),
            |b, (g, d)| b.iter(|| blockdet::bpartition::det_via_bpartitions(g, d).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, permanent_scan, block_sum, crossover);
criterion_main!(benches);

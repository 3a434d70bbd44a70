use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use palk_bench::{fixture, KINDS};
use palk_core::palindromes::total_iterations;
use palk_core::{build_lce, scan_all, CorpusKind, MatchRelation, ScanOptions, Variant};

fn lce_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("lce_build");
    for n in [1_000usize, 10_000] {
        let s = fixture(CorpusKind::Dna, n);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| build_lce(black_box(s), &MatchRelation::Identity).unwrap())
        });
    }
    group.finish();
}

fn scan_variants(c: &mut Criterion) {
    let n = 500;
    let k = 25;
    let mut group = c.benchmark_group("scan_all");
    group.sample_size(20);
    for kind in KINDS {
        let s = fixture(kind, n);
        for variant in Variant::ALL {
            let opts = ScanOptions::new(k, variant);
            group.bench_with_input(BenchmarkId::new(kind.name(), variant.name()), &s, |b, s| {
                b.iter(|| scan_all(black_box(s), &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn iteration_totals(c: &mut Criterion) {
    let s = fixture(CorpusKind::Dna, 500);
    let oracle = build_lce(&s, &MatchRelation::Identity).unwrap();
    let mut group = c.benchmark_group("total_iterations");
    group.sample_size(20);
    for variant in Variant::ALL {
        group.bench_function(variant.name(), |b| b.iter(|| total_iterations(s.len(), &oracle, black_box(25), variant)));
    }
    group.finish();
}

criterion_group!(benches, lce_build, scan_variants, iteration_totals);
criterion_main!(benches);

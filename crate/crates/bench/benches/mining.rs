use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use evmine_bench::{fixed_pattern, synthetic};
use evmine_core::{commitment, opminer, plausibility, samples, support, MinerConfig};
use std::hint::black_box;

fn bench_plausibility(c: &mut Criterion) {
    let mut g = c.benchmark_group("plausibility");
    for n in [3, 4, 6, 8] {
        let db = synthetic(64, 1, n, 1);
        let cells: Vec<_> = db.column(0).cloned().collect();
        g.throughput(Throughput::Elements(cells.len() as u64));
        g.bench_with_input(BenchmarkId::from_parameter(n), &cells, |b, cells| {
            b.iter(|| {
                cells
                    .iter()
                    .map(|m| plausibility(black_box(m)).values()[0])
                    .sum::<f64>()
            })
        });
    }
    g.finish();
}

fn bench_commitment(c: &mut Criterion) {
    let db = samples::treatment_db();
    c.bench_function("commitment/treatment", |b| {
        b.iter(|| commitment(black_box(db.cell(0, 0)), black_box(db.cell(1, 0))).unwrap())
    });
}

fn bench_support(c: &mut Criterion) {
    let mut g = c.benchmark_group("support");
    let db = synthetic(1000, 10, 4, 8);
    let pattern = fixed_pattern(&db, 3);
    for d in [250, 500, 1000] {
        let prefix =
            evmine_core::EvidentialDatabase::new(db.attributes().to_vec(), db.rows()[..d].to_vec())
                .unwrap();
        let proj = prefix.pl_project();
        g.throughput(Throughput::Elements(d as u64));
        g.bench_with_input(BenchmarkId::from_parameter(d), &proj, |b, proj| {
            b.iter(|| support(black_box(&pattern), proj))
        });
    }
    g.finish();
}

fn bench_opminer(c: &mut Criterion) {
    let mut g = c.benchmark_group("opminer");
    g.sample_size(10);
    let db = synthetic(1000, 10, 4, 8);
    for minsup in [0.3, 0.05, 0.01] {
        let cfg = MinerConfig::new(minsup).unwrap().with_maxlen(4).unwrap();
        g.bench_with_input(BenchmarkId::new("sequential", minsup), &cfg, |b, cfg| {
            let cfg = cfg.clone().with_parallel(false);
            b.iter(|| opminer(&db, &cfg).len())
        });
        g.bench_with_input(BenchmarkId::new("parallel", minsup), &cfg, |b, cfg| {
            b.iter(|| opminer(&db, cfg).len())
        });
    }
    let s1 = samples::s1_db();
    let cfg = MinerConfig::new(0.05).unwrap();
    g.bench_function("survey_sample", |b| b.iter(|| opminer(&s1, &cfg).len()));
    g.finish();
}

criterion_group!(
    benches,
    bench_plausibility,
    bench_commitment,
    bench_support,
    bench_opminer
);
criterion_main!(benches);

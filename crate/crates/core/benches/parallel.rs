use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ggr_core::certificate::{certify_batch, certify_inductive, certify_solver_with, default_s_candidates, verify_with};
use ggr_core::numeric::{demo_ggr_with, quotient_table_with, DemoOptions, TestFunction};
use ggr_core::rational::frac;
use ggr_core::{mz_difference, CaseTag, Exec, Strategy};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solver");
    group.sample_size(10);
    for n in [6u32, 8] {
        let candidates = default_s_candidates(n);
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| certify_solver_with(black_box(n), CaseTag::Ggr, &candidates, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    for n in [10u32, 16] {
        let cert = certify_inductive(n, CaseTag::Ggr).unwrap();
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, n), &cert, |b, cert| {
                b.iter(|| assert!(verify_with(black_box(cert), exec).ok))
            });
        }
    }
    group.finish();
}

fn batch_certify(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify_batch_2_to_14");
    group.sample_size(10);
    let ns: Vec<u32> = (2..=14).collect();
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| {
            b.iter(|| {
                for r in certify_batch(black_box(&ns), CaseTag::Ggr, Strategy::Inductive, exec) {
                    r.unwrap();
                }
            })
        });
    }
    group.finish();
}

fn quotient_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("quotient_table");
    let d = mz_difference(8).unwrap();
    let exact = TestFunction::Poly((0..=9).map(|i| frac(i, 3)).collect());
    for (label, f) in [("exp", TestFunction::Exp), ("poly_exact", exact)] {
        for (name, exec) in POLICIES {
            group.bench_function(BenchmarkId::new(name, label), |b| {
                b.iter(|| quotient_table_with(&d, &f, &frac(1, 3), &frac(1, 4), &frac(1, 2), 48, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn demo(c: &mut Criterion) {
    let mut group = c.benchmark_group("demo_ggr_n6");
    group.sample_size(20);
    let opts = DemoOptions { steps: 24, ..DemoOptions::default() };
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| {
            b.iter(|| demo_ggr_with(6, &TestFunction::Sin, &frac(1, 5), &opts, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, solver, verification, batch_certify, quotient_tables, demo);
criterion_main!(benches);

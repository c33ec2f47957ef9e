use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dpsimplex::two_dim::{partition_rows, solve_2d};
use dpsimplex::{KleeMintyVariant, PivotRule, Pruning, Rational, SolverOptions, Tolerances, TwoDimLP};
use dpsimplex_bench::{bounded_seed, km_case, random_case};

const RULES: [PivotRule; 2] = [PivotRule::Dantzig, PivotRule::PaperDouble];

fn klee_minty(c: &mut Criterion) {
    let mut group = c.benchmark_group("klee-minty-v1");
    for m in [6, 8, 10] {
        let case = km_case::<f64>(KleeMintyVariant::V1, m);
        for rule in RULES {
            let opts = SolverOptions::new(rule);
            group.bench_with_input(BenchmarkId::new(rule.name(), m), &case, |b, case| {
                b.iter(|| dpsimplex::solve(black_box(&case.lp), &case.basis, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn klee_minty_rational(c: &mut Criterion) {
    let mut group = c.benchmark_group("klee-minty-v2-rational");
    group.sample_size(20);
    for m in [20, 50] {
        let case = km_case::<Rational>(KleeMintyVariant::V2, m);
        let opts = SolverOptions::new(PivotRule::PaperDouble);
        group.bench_with_input(BenchmarkId::from_parameter(m), &case, |b, case| {
            b.iter(|| dpsimplex::solve(black_box(&case.lp), &case.basis, &opts).unwrap())
        });
    }
    group.finish();
}

fn random(c: &mut Criterion) {
    let mut group = c.benchmark_group("random");
    for m in [10, 50] {
        let case = random_case::<f64>(m, bounded_seed(m, 0));
        for rule in RULES {
            let opts = SolverOptions::new(rule);
            group.bench_with_input(BenchmarkId::new(rule.name(), &case.name), &case, |b, case| {
                b.iter(|| dpsimplex::solve(black_box(&case.lp), &case.basis, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn two_variable_subproblem(c: &mut Criterion) {
    // Many redundant rows: x1 + k x2 <= k^2 for k = 1..=200.
    let rows = 200;
    let p = TwoDimLP::new(
        vec![1.0; rows],
        (1..=rows).map(|k| k as f64).collect(),
        (1..=rows).map(|k| (k * k) as f64).collect(),
        -1.0,
        -1.0,
    )
    .unwrap();
    let tol = Tolerances::default();
    let part = partition_rows(&p, &tol);
    let mut group = c.benchmark_group("two-variable");
    for (name, pruning) in [("pruned", Pruning::On), ("all-pairs", Pruning::Off)] {
        group.bench_function(name, |b| {
            b.iter(|| solve_2d(black_box(&p), &part, None, None, pruning, &tol).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, klee_minty, klee_minty_rational, random, two_variable_subproblem);
criterion_main!(benches);

//! Parallel against sequential execution of the main sums.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use omega_core::genus0::intersect::IntersectionCache;
use omega_core::hurwitz::{factorization_count_with, HurwitzSpec};
use omega_core::omega::{OmegaEngine, OmegaSpec, Strategy};
use omega_core::par::Execution;
use omega_core::tr::{tr_relation_lhs_with, RelationInput};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn omega_integrals(c: &mut Criterion) {
    // warm entries would hide the work being measured
    IntersectionCache::global().set_enabled(false);
    let spec = OmegaSpec::new(3, 0, vec![2, 1, 2, 2, 1, 1]).unwrap();
    let psi = [1, 0, 0, 0, 0, 0];
    let mut group = c.benchmark_group("omega_integral_n6");
    group.sample_size(10);
    for strategy in [Strategy::Factorized, Strategy::TreeSum, Strategy::Graded] {
        for (name, exec) in MODES {
            let engine = OmegaEngine::new(spec.clone()).unwrap().strategy(strategy).execution(exec);
            group.bench_with_input(BenchmarkId::new(format!("{strategy:?}"), name), &psi, |b, psi| {
                b.iter(|| engine.integral(black_box(psi)).unwrap())
            });
        }
    }
    group.finish();
}

fn relation(c: &mut Criterion) {
    IntersectionCache::global().set_enabled(false);
    let input = RelationInput::new(3, vec![2], vec![2, 2, 2, 2]).unwrap();
    let mut group = c.benchmark_group("relation_r3_l4");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| tr_relation_lhs_with(black_box(&input), exec).unwrap()));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let spec = HurwitzSpec::new(2, vec![2, 2, 1, 1]).unwrap();
    let mut group = c.benchmark_group("oracle_r2_d6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| factorization_count_with(black_box(&spec), true, 8, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, omega_integrals, relation, oracle);
criterion_main!(benches);

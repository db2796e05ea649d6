use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hdalang::fo::{p2n_family, FoLanguage};
use hdalang::ipomset::{Label, PomsetEnumerator};
use hdalang::Execution;

const MODES: [(&str, Execution); 2] =
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn alphabet() -> Vec<Label> {
    vec![Label::new("a"), Label::new("b")]
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    group.sample_size(10);
    for (name, exec) in MODES {
        let e = PomsetEnumerator::new(&alphabet()).max_events(5).max_dim(3).execution(exec);
        group.bench_with_input(BenchmarkId::new(name, 5), &e, |b, e| b.iter(|| e.count().unwrap()));
    }
    group.finish();
}

fn round_trip(c: &mut Criterion) {
    let mut group = c.benchmark_group("round_trip");
    group.sample_size(10);
    for (name, exec) in MODES {
        let e = PomsetEnumerator::new(&alphabet()).max_events(5).max_dim(3).execution(exec);
        group.bench_with_input(BenchmarkId::new(name, 5), &e, |b, e| {
            b.iter(|| {
                e.find_violation(|w| {
                    let p = w.glue();
                    p.st_decompose_sparse() == *w
                })
                .unwrap()
            })
        });
    }
    group.finish();
}

fn fo_models(c: &mut Criterion) {
    let mut group = c.benchmark_group("fo_models");
    group.sample_size(10);
    let phi = p2n_family();
    for (name, exec) in MODES {
        let l = FoLanguage::new(&alphabet(), 5, 3).execution(exec);
        group.bench_with_input(BenchmarkId::new(name, 5), &l, |b, l| b.iter(|| l.models(&phi).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, round_trip, fo_models);
criterion_main!(benches);

//! Compares the data-parallel inner loops against their sequential
//! counterparts on the two heaviest workloads: exhaustive union-of-passers
//! supremal computation and a seeded verification campaign.
//!
//! Built with the default `parallel` feature, the `parallel` variants run on
//! rayon; without it both variants use the sequential code path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coordctl_core::coordination::is_conditionally_observable;
use coordctl_core::fixtures::closed_lang;
use coordctl_core::oracle::{self, CoordinationSnapshot};
use coordctl_core::random::{random_problem, run_seeded, ProblemConfig};
use coordctl_core::words::WordSet;
use coordctl_core::Generator;

/// A coordination problem whose specification carries enough words to make
/// subset enumeration expensive (2^12 candidates).
fn heavy_snapshot() -> CoordinationSnapshot {
    use coordctl_core::coordination::{CoordinationProblem, DecomposabilityPolicy};
    use coordctl_core::event::{event_set, EventTable};

    let table = EventTable::new(
        event_set(["a", "b", "u"]),
        event_set(["a", "b"]),
        event_set(["a"]),
    )
    .unwrap()
    .with_decomposition(event_set(["a", "u"]), event_set(["b", "u"]), event_set(["u"]))
    .unwrap();
    let g1 = closed_lang(&["a", "u"], &["a.u.a", "u.a", "a.a"]);
    let g2 = closed_lang(&["b", "u"], &["b.u.b", "u.b", "b.b"]);
    let problem = CoordinationProblem::new(
        g1,
        g2,
        None,
        Generator::empty_language(event_set(["a", "b", "u"])),
        table,
        DecomposabilityPolicy::Skip,
    )
    .unwrap();
    // take twelve plant words as the specification
    let plant_words: WordSet = oracle::enumerate(
        problem.plant(),
        6,
        coordctl_core::LanguageKind::Marked,
    )
    .words
    .into_iter()
    .take(12)
    .collect();
    let spec = Generator::from_words(problem.plant().alphabet().clone(), &plant_words).unwrap();
    let problem = problem.with_spec(spec).unwrap();
    CoordinationSnapshot::capture(&problem, 8)
}

fn bench_union_of_passers(c: &mut Criterion) {
    let snap = heavy_snapshot();
    let mut group = c.benchmark_group("supremal_union_of_passers");
    group.sample_size(10);
    for (label, parallel) in [("sequential", false), ("parallel", true)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |b, &p| {
            b.iter(|| {
                oracle::supremal_conditionally_controllable_strong_k_observable_words(&snap, p)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_campaign(c: &mut Criterion) {
    let cfg = ProblemConfig::default();
    let mut group = c.benchmark_group("verification_campaign_64");
    group.sample_size(10);
    for (label, parallel) in [("sequential", false), ("parallel", true)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |b, &p| {
            b.iter(|| {
                run_seeded(64, 0xBE7C, p, |_, mut rng| {
                    let problem = random_problem(&mut rng, &cfg).unwrap();
                    let snap = CoordinationSnapshot::capture(&problem, 8);
                    let prod = is_conditionally_observable(&problem).unwrap().holds;
                    let orac = oracle::conditionally_observable_words(&snap, &snap.spec).0;
                    assert_eq!(prod, orac);
                    prod
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_union_of_passers, bench_campaign);
criterion_main!(benches);

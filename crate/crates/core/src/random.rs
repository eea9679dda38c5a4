//! Seeded random instance generation for the verification campaigns and the
//! oracle comparison driver. Identical seeds yield identical instances on
//! every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coordination::{
    extend_coordinator_alphabet, make_coordinator, CoordinationProblem, DecomposabilityPolicy,
};
use crate::error::DesError;
use crate::event::{Event, EventSet, EventTable};
use crate::exec;
use crate::generator::{Generator, LanguageKind};
use crate::oracle::enumerate;
use crate::ops::language_intersection;

/// Shape of a random generator.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub alphabet: EventSet,
    pub max_states: usize,
    pub transition_density: f64,
    pub marking_probability: f64,
    /// Acyclic transition graphs keep every language finite, which the
    /// bounded oracle needs for exact verdicts.
    pub acyclic: bool,
}

impl GeneratorConfig {
    pub fn tiny(alphabet: EventSet) -> Self {
        GeneratorConfig {
            alphabet,
            max_states: 3,
            transition_density: 0.5,
            marking_probability: 0.6,
            acyclic: true,
        }
    }
}

pub fn random_generator(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Generator {
    let states = rng.gen_range(1..=cfg.max_states.max(1));
    let mut transitions: Vec<std::collections::BTreeMap<Event, usize>> =
        vec![std::collections::BTreeMap::new(); states];
    for (src, row) in transitions.iter_mut().enumerate() {
        for e in &cfg.alphabet {
            if rng.gen_bool(cfg.transition_density) {
                let dst = if cfg.acyclic {
                    if src + 1 >= states {
                        continue;
                    }
                    rng.gen_range(src + 1..states)
                } else {
                    rng.gen_range(0..states)
                };
                row.insert(e.clone(), dst);
            }
        }
    }
    let marked = (0..states)
        .filter(|_| rng.gen_bool(cfg.marking_probability))
        .collect();
    Generator::new(cfg.alphabet.clone(), transitions, 0, marked)
        .expect("random construction is in range")
        .canonicalize()
}

/// A monolithic check instance: `K ⊆ C ⊆ L(plant)` with attribute sets.
#[derive(Debug, Clone)]
pub struct MonolithicInstance {
    pub k: Generator,
    pub c: Generator,
    pub plant: Generator,
    pub sigma_u: EventSet,
    pub sigma_o: EventSet,
    pub sigma_c: EventSet,
}

pub fn random_monolithic(rng: &mut ChaCha8Rng, events: &[&str]) -> MonolithicInstance {
    let alphabet: EventSet = events.iter().map(Event::new).collect();
    let cfg = GeneratorConfig::tiny(alphabet.clone());
    let plant_base = random_generator(rng, &cfg);
    // the plant language is prefix-closed with every word marked
    let plant = crate::checks::generated_as_marked(&plant_base);
    let k0 = random_generator(rng, &cfg);
    let k = language_intersection(&k0, &plant).expect("same alphabet");
    let c = grow_ambient(rng, &k, &plant);
    let sigma_u: EventSet = alphabet.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
    let sigma_c: EventSet = alphabet.difference(&sigma_u).cloned().collect();
    // bias towards mostly-observable alphabets so nontrivial normality and
    // observability instances appear often enough
    let sigma_o: EventSet = alphabet.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
    MonolithicInstance {
        k,
        c,
        plant,
        sigma_u,
        sigma_o,
        sigma_c,
    }
}

/// Grows an ambient language between `k` and the plant by sampling plant
/// words.
pub fn grow_ambient(rng: &mut ChaCha8Rng, k: &Generator, plant: &Generator) -> Generator {
    let plant_words = enumerate(plant, 4, LanguageKind::Marked).words;
    let mut words = enumerate(k, 6, LanguageKind::Marked).words;
    for w in plant_words {
        if rng.gen_bool(0.4) {
            words.insert(w);
        }
    }
    Generator::from_words(plant.alphabet().clone(), &words).expect("words fit the alphabet")
}

/// Shape of a random coordination problem.
#[derive(Debug, Clone)]
pub struct ProblemConfig {
    pub events: Vec<&'static str>,
    pub max_states: usize,
    /// Extend Σk until the specification and its closure decompose, and
    /// enforce that at construction.
    pub decomposable: bool,
    pub controllable_bias: f64,
    pub observable_bias: f64,
}

impl Default for ProblemConfig {
    fn default() -> Self {
        ProblemConfig {
            events: vec!["a", "b", "u"],
            max_states: 3,
            decomposable: false,
            controllable_bias: 0.6,
            observable_bias: 0.6,
        }
    }
}

/// Draws a full coordination problem: random alphabet split, random acyclic
/// subsystems, the canonical coordinator, and a random specification inside
/// the composed plant (resampled a few times if it comes out empty).
pub fn random_problem(
    rng: &mut ChaCha8Rng,
    cfg: &ProblemConfig,
) -> Result<CoordinationProblem, DesError> {
    let all: Vec<Event> = cfg.events.iter().map(Event::new).collect();
    let mut a1 = EventSet::new();
    let mut a2 = EventSet::new();
    for e in &all {
        match rng.gen_range(0..3) {
            0 => {
                a1.insert(e.clone());
            }
            1 => {
                a2.insert(e.clone());
            }
            _ => {
                a1.insert(e.clone());
                a2.insert(e.clone());
            }
        }
    }
    if a1.is_empty() {
        a1.insert(all[0].clone());
    }
    if a2.is_empty() {
        a2.insert(all[all.len() - 1].clone());
    }
    let union: EventSet = a1.union(&a2).cloned().collect();
    let mut ak: EventSet = a1.intersection(&a2).cloned().collect();
    for e in union.iter() {
        if !ak.contains(e) && rng.gen_bool(0.3) {
            ak.insert(e.clone());
        }
    }
    let controllable: EventSet = union
        .iter()
        .filter(|_| rng.gen_bool(cfg.controllable_bias))
        .cloned()
        .collect();
    let observable: EventSet = union
        .iter()
        .filter(|_| rng.gen_bool(cfg.observable_bias))
        .cloned()
        .collect();
    let mut table = EventTable::new(union.clone(), controllable, observable)?
        .with_decomposition(a1.clone(), a2.clone(), ak)?;

    let g1 = random_generator(
        rng,
        &GeneratorConfig {
            max_states: cfg.max_states,
            ..GeneratorConfig::tiny(a1)
        },
    );
    let g2 = random_generator(
        rng,
        &GeneratorConfig {
            max_states: cfg.max_states,
            ..GeneratorConfig::tiny(a2)
        },
    );
    let mut gk = make_coordinator(&g1, &g2, &table)?;
    let plant = crate::ops::sync_product(&crate::ops::sync_product(&g1, &g2), &gk);

    let mut spec = Generator::empty_language(union.clone());
    for _ in 0..4 {
        let k0 = random_generator(
            rng,
            &GeneratorConfig {
                max_states: cfg.max_states,
                ..GeneratorConfig::tiny(union.clone())
            },
        );
        let k = language_intersection(&k0, &plant)?;
        if !k.is_empty_marked() {
            spec = k;
            break;
        }
        spec = k;
    }

    let policy = if cfg.decomposable {
        let extended = extend_coordinator_alphabet(&spec, &table)?;
        table.set_alphabet_k(extended)?;
        gk = make_coordinator(&g1, &g2, &table)?;
        DecomposabilityPolicy::Enforce
    } else {
        DecomposabilityPolicy::Skip
    };
    CoordinationProblem::new(g1, g2, Some(gk), spec, table, policy)
}

/// Random ambient `C` with `K ⊆ C ⊆ Lm(plant)` for a problem.
pub fn random_ambient(rng: &mut ChaCha8Rng, p: &CoordinationProblem) -> Generator {
    grow_ambient(rng, p.spec(), p.plant())
}

/// Random marked sublanguage of a language (for union-closure campaigns).
pub fn random_sublanguage(rng: &mut ChaCha8Rng, g: &Generator, keep: f64) -> Generator {
    let words = enumerate(g, 5, LanguageKind::Marked).words;
    let kept: crate::words::WordSet = words
        .into_iter()
        .filter(|_| rng.gen_bool(keep))
        .collect();
    Generator::from_words(g.alphabet().clone(), &kept).expect("words fit the alphabet")
}

/// Runs `count` seeded jobs, each with its own deterministic RNG; results
/// come back in instance order regardless of the execution mode.
pub fn run_seeded<R, F>(count: usize, seed: u64, parallel: bool, job: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize, ChaCha8Rng) -> R + Sync + Send,
{
    let indices: Vec<usize> = (0..count).collect();
    exec::map_collect(indices, parallel, |i| {
        let rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        job(i, rng)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seeds_give_identical_instances() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let cfg = ProblemConfig::default();
        let p1 = random_problem(&mut r1, &cfg).unwrap();
        let p2 = random_problem(&mut r2, &cfg).unwrap();
        assert_eq!(p1.spec(), p2.spec());
        assert_eq!(p1.plant(), p2.plant());
        assert_eq!(p1.table(), p2.table());
    }

    #[test]
    fn random_problems_satisfy_their_invariants() {
        for seed in 0..30u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_problem(&mut rng, &ProblemConfig::default()).unwrap();
            p.table().validate_coordination().unwrap();
            assert!(crate::ops::is_sublanguage(
                p.spec(),
                p.plant(),
                LanguageKind::Marked
            )
            .unwrap()
            .holds);
        }
    }

    #[test]
    fn decomposable_problems_construct_under_the_enforcing_policy() {
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_problem(
                &mut rng,
                &ProblemConfig {
                    decomposable: true,
                    ..ProblemConfig::default()
                },
            )
            .unwrap();
            let v = crate::coordination::is_conditionally_decomposable(p.spec(), p.table())
                .unwrap();
            assert!(v.holds);
        }
    }

    #[test]
    fn seeded_campaigns_are_order_stable() {
        let a = run_seeded(8, 11, false, |i, mut rng| (i, rng.gen_range(0..100u32)));
        let b = run_seeded(8, 11, true, |i, mut rng| (i, rng.gen_range(0..100u32)));
        assert_eq!(a, b);
    }
}

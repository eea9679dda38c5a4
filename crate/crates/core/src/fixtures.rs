//! Small worked instances shared by the test suites, the benchmarks and the
//! documentation.

use crate::coordination::{CoordinationProblem, DecomposabilityPolicy};
use crate::event::{event_set, EventSet, EventTable};
use crate::generator::Generator;
use crate::words::word_set;

/// Marked-language acceptor from dot-separated words.
pub fn lang(alphabet: &[&str], words: &[&str]) -> Generator {
    Generator::from_words(
        event_set(alphabet.iter().copied()),
        &word_set(words.iter().copied()),
    )
    .expect("fixture words fit their alphabet")
}

/// Prefix-closed plant from dot-separated words (all states marked).
pub fn closed_lang(alphabet: &[&str], words: &[&str]) -> Generator {
    lang(alphabet, words).prefix_closure()
}

/// The two-machine partial-observation demo; the classic counterexample
/// showing that the weak conditional relative-observability family is not
/// closed under unions.
///
/// Subsystem one generates `closure{a, τa}` over {a, τ}, subsystem two
/// `closure{τ}` over {τ}; the coordinator alphabet is {τ} and only `a` is
/// observable. Component specifications are `K1 = {a}` and `K2 = {τ}`. Both
/// are conditionally `C`-observable for `C = K1 ∪ K2`, but their union is
/// not. Event controllability is a fixture choice: all events controllable.
pub struct PartialObservationDemo {
    pub problem: CoordinationProblem,
    pub k1: Generator,
    pub k2: Generator,
    /// `K1 ∪ K2`, the specification of `problem` and the ambient `C`.
    pub union: Generator,
}

pub fn partial_observation_demo() -> PartialObservationDemo {
    let table = demo_table();
    let g1 = closed_lang(&["a", "tau"], &["a", "tau.a"]);
    let g2 = closed_lang(&["tau"], &["tau"]);
    let k1 = lang(&["a", "tau"], &["a"]);
    let k2 = lang(&["a", "tau"], &["tau"]);
    let union = lang(&["a", "tau"], &["a", "tau"]);
    let problem = CoordinationProblem::new(
        g1,
        g2,
        None,
        union.clone(),
        table,
        DecomposabilityPolicy::Enforce,
    )
    .expect("the demo problem is well-formed");
    PartialObservationDemo {
        problem,
        k1,
        k2,
        union,
    }
}

pub fn demo_table() -> EventTable {
    EventTable::new(
        event_set(["a", "tau"]),
        event_set(["a", "tau"]),
        event_set(["a"]),
    )
    .expect("valid attribute sets")
    .with_decomposition(
        event_set(["a", "tau"]),
        event_set(["tau"]),
        event_set(["tau"]),
    )
    .expect("valid decomposition")
}

/// A two-subsystem instance whose distributed synthesis is sound but whose
/// certification hypotheses fail: the two component languages conflict.
///
/// Each subsystem privately disables one interleaving of the shared `a b`
/// skeleton through an uncontrollable event (`x` after `a` on side one, `y`
/// after `b` on side two), so the supremal component languages become `{ba}`
/// and `{ab}`, which share no word.
pub fn conflicting_components_demo() -> CoordinationProblem {
    let table = EventTable::new(
        event_set(["a", "b", "x", "y"]),
        event_set(["a", "b"]),
        event_set(["a", "b", "x", "y"]),
    )
    .expect("valid attribute sets")
    .with_decomposition(
        event_set(["a", "b", "x"]),
        event_set(["a", "b", "y"]),
        event_set(["a", "b"]),
    )
    .expect("valid decomposition");
    let g1 = closed_lang(&["a", "b", "x"], &["a.b", "a.x", "b.a"]);
    let g2 = closed_lang(&["a", "b", "y"], &["a.b", "b.a", "b.y"]);
    let spec = lang(&["a", "b", "x", "y"], &["a.b", "b.a"]);
    CoordinationProblem::new(g1, g2, None, spec, table, DecomposabilityPolicy::Enforce)
        .expect("the conflicting demo problem is well-formed")
}

/// Alphabet of the demo universe, for convenience in tests.
pub fn demo_alphabet() -> EventSet {
    event_set(["a", "tau"])
}

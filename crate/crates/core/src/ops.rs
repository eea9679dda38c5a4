//! Language-level operations on generators: synchronous product, natural
//! projection, boolean combinations and decidable comparisons.
//!
//! Boolean operations require equal alphabets; combining languages over
//! different alphabets always goes through [`sync_product`] (or its inverse
//! projection wrapper), never through silent coercion.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::DesError;
use crate::event::{Event, EventSet};
use crate::generator::{Generator, LanguageKind};
use crate::witness::{PropertyVerdict, Witness};

pub(crate) fn require_same_alphabet(g1: &Generator, g2: &Generator) -> Result<(), DesError> {
    if g1.alphabet() == g2.alphabet() {
        return Ok(());
    }
    Err(DesError::AlphabetMismatch {
        only_left: g1.alphabet().difference(g2.alphabet()).cloned().collect(),
        only_right: g2.alphabet().difference(g1.alphabet()).cloned().collect(),
    })
}

/// Synchronous product `G1 ∥ G2`: shared events move both generators, private
/// events interleave. `L(G1 ∥ G2) = L(G1) ∥ L(G2)` and likewise for the marked
/// languages.
pub fn sync_product(g1: &Generator, g2: &Generator) -> Generator {
    let alphabet: EventSet = g1.alphabet().union(g2.alphabet()).cloned().collect();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut transitions: Vec<BTreeMap<Event, usize>> = Vec::new();
    let mut marked = BTreeSet::new();
    let mut queue = VecDeque::new();

    let start = (g1.initial(), g2.initial());
    index.insert(start, 0);
    transitions.push(BTreeMap::new());
    if g1.is_marked(g1.initial()) && g2.is_marked(g2.initial()) {
        marked.insert(0);
    }
    queue.push_back(start);

    while let Some((q1, q2)) = queue.pop_front() {
        let src = index[&(q1, q2)];
        for e in &alphabet {
            let in1 = g1.alphabet().contains(e);
            let in2 = g2.alphabet().contains(e);
            let next = match (in1, in2) {
                (true, true) => match (g1.step(q1, e), g2.step(q2, e)) {
                    (Some(n1), Some(n2)) => Some((n1, n2)),
                    _ => None,
                },
                (true, false) => g1.step(q1, e).map(|n1| (n1, q2)),
                (false, true) => g2.step(q2, e).map(|n2| (q1, n2)),
                (false, false) => None,
            };
            if let Some(pair) = next {
                let dst = *index.entry(pair).or_insert_with(|| {
                    transitions.push(BTreeMap::new());
                    if g1.is_marked(pair.0) && g2.is_marked(pair.1) {
                        marked.insert(transitions.len() - 1);
                    }
                    queue.push_back(pair);
                    transitions.len() - 1
                });
                transitions[index[&(q1, q2)]].insert(e.clone(), dst);
                debug_assert_eq!(src, index[&(q1, q2)]);
            }
        }
    }

    Generator::new(alphabet, transitions, 0, marked)
        .expect("product construction is internally consistent")
        .canonicalize()
}

/// Natural projection of a generator onto `target`, determinized on the fly.
///
/// Events outside `target` are erased; the result is the subset-construction
/// automaton whose states are erased-event closures. A subset state is marked
/// iff it contains a marked state, which realizes `Lm(P(G)) = P(Lm(G))`.
/// Events of `target` missing from the generator's alphabet are clipped; they
/// are reported by [`project_with_note`].
pub fn project(g: &Generator, target: &EventSet) -> Generator {
    project_with_note(g, target).0
}

/// Like [`project`], also returning the clipped events (those of `target` not
/// in the generator's alphabet).
pub fn project_with_note(g: &Generator, target: &EventSet) -> (Generator, EventSet) {
    let clipped: EventSet = target.difference(g.alphabet()).cloned().collect();
    let kept: EventSet = target.intersection(g.alphabet()).cloned().collect();
    let erased: EventSet = g.alphabet().difference(&kept).cloned().collect();

    let closure = |seed: BTreeSet<usize>| -> BTreeSet<usize> {
        let mut set = seed;
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for e in &erased {
                if let Some(n) = g.step(q, e) {
                    if set.insert(n) {
                        stack.push(n);
                    }
                }
            }
        }
        set
    };

    let start = closure([g.initial()].into_iter().collect());
    let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut transitions: Vec<BTreeMap<Event, usize>> = vec![BTreeMap::new()];
    let mut marked = BTreeSet::new();
    if start.iter().any(|&q| g.is_marked(q)) {
        marked.insert(0);
    }
    let mut queue = VecDeque::new();
    queue.push_back(start.clone());
    index.insert(start, 0);

    while let Some(subset) = queue.pop_front() {
        let src = index[&subset];
        for e in &kept {
            let moved: BTreeSet<usize> =
                subset.iter().filter_map(|&q| g.step(q, e)).collect();
            if moved.is_empty() {
                continue;
            }
            let next = closure(moved);
            let dst = match index.get(&next) {
                Some(&d) => d,
                None => {
                    let d = transitions.len();
                    transitions.push(BTreeMap::new());
                    if next.iter().any(|&q| g.is_marked(q)) {
                        marked.insert(d);
                    }
                    index.insert(next.clone(), d);
                    queue.push_back(next);
                    d
                }
            };
            transitions[src].insert(e.clone(), dst);
        }
    }

    let projected = Generator::new(kept, transitions, 0, marked)
        .expect("subset construction is internally consistent")
        .canonicalize();
    (projected, clipped)
}

/// Inverse projection onto a larger alphabet: `P⁻¹(L)` realized as the
/// synchronous product with the full shuffle over the added events.
pub fn inverse_project(g: &Generator, superset: &EventSet) -> Result<Generator, DesError> {
    if !g.alphabet().is_subset(superset) {
        let stray: Vec<Event> = g.alphabet().difference(superset).cloned().collect();
        return Err(DesError::invalid(format!(
            "inverse projection target must contain the alphabet; missing {stray:?}"
        )));
    }
    let extra: EventSet = superset.difference(g.alphabet()).cloned().collect();
    Ok(sync_product(g, &Generator::universal(extra)))
}

/// `Lm(result) = Lm(g1) ∪ Lm(g2)` over a common alphabet; the generated
/// language is recomputed from the marked automaton by trimming.
pub fn language_union(g1: &Generator, g2: &Generator) -> Result<Generator, DesError> {
    require_same_alphabet(g1, g2)?;
    let (c1, _) = g1.complete_with_sink();
    let (c2, _) = g2.complete_with_sink();
    let product = pair_product(&c1, &c2, |m1, m2| m1 || m2);
    Ok(product.trim())
}

/// `Lm(result) = Lm(g1) ∩ Lm(g2)` over a common alphabet.
pub fn language_intersection(g1: &Generator, g2: &Generator) -> Result<Generator, DesError> {
    require_same_alphabet(g1, g2)?;
    let product = pair_product(g1, g2, |m1, m2| m1 && m2);
    Ok(product.trim())
}

/// Same-alphabet pair product with a marking rule; partial where either side
/// is partial.
fn pair_product(
    g1: &Generator,
    g2: &Generator,
    mark: impl Fn(bool, bool) -> bool,
) -> Generator {
    let alphabet = g1.alphabet().clone();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut transitions: Vec<BTreeMap<Event, usize>> = vec![BTreeMap::new()];
    let mut marked = BTreeSet::new();
    let start = (g1.initial(), g2.initial());
    index.insert(start, 0);
    if mark(g1.is_marked(start.0), g2.is_marked(start.1)) {
        marked.insert(0);
    }
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some((q1, q2)) = queue.pop_front() {
        let src = index[&(q1, q2)];
        for e in &alphabet {
            if let (Some(n1), Some(n2)) = (g1.step(q1, e), g2.step(q2, e)) {
                let pair = (n1, n2);
                let dst = match index.get(&pair) {
                    Some(&d) => d,
                    None => {
                        let d = transitions.len();
                        transitions.push(BTreeMap::new());
                        if mark(g1.is_marked(n1), g2.is_marked(n2)) {
                            marked.insert(d);
                        }
                        index.insert(pair, d);
                        queue.push_back(pair);
                        d
                    }
                };
                transitions[src].insert(e.clone(), dst);
            }
        }
    }
    Generator::new(alphabet, transitions, 0, marked)
        .expect("pair product is internally consistent")
        .canonicalize()
}

/// Decides `lang(g1) ⊆ lang(g2)` over a common alphabet. On failure the
/// witness is the breadth-first (hence shortest, lexicographically least)
/// word in the difference.
pub fn is_sublanguage(
    g1: &Generator,
    g2: &Generator,
    kind: LanguageKind,
) -> Result<PropertyVerdict, DesError> {
    require_same_alphabet(g1, g2)?;
    let left = match kind {
        LanguageKind::Generated => g1.clone(),
        // compare marked languages on the trim automaton so dead branches of
        // g1 do not produce phantom witnesses
        LanguageKind::Marked => g1.trim(),
    };
    let (c2, sink) = g2.complete_with_sink();

    // BFS over the (left, completed-right) product, looking for the first
    // state witnessing membership on the left but not on the right.
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut parent: Vec<Option<(usize, Event)>> = vec![None];
    let mut states: Vec<(usize, usize)> = vec![(left.initial(), c2.initial())];
    index.insert((left.initial(), c2.initial()), 0);
    let mut queue = VecDeque::new();
    queue.push_back(0usize);

    let offending = |q1: usize, q2: usize| -> bool {
        match kind {
            LanguageKind::Generated => q2 == sink,
            LanguageKind::Marked => left.is_marked(q1) && (q2 == sink || !c2.is_marked(q2)),
        }
    };

    while let Some(cur) = queue.pop_front() {
        let (q1, q2) = states[cur];
        if offending(q1, q2) {
            let mut word = Vec::new();
            let mut at = cur;
            while let Some((prev, e)) = parent[at].clone() {
                word.push(e);
                at = prev;
            }
            word.reverse();
            return Ok(PropertyVerdict::fail(Witness::word(
                word,
                "word in the left language but not in the right",
            )));
        }
        for (e, &n1) in left.transitions_from(q1) {
            let n2 = c2.step(q2, e).expect("right side is complete");
            let pair = (n1, n2);
            if !index.contains_key(&pair) {
                let id = states.len();
                index.insert(pair, id);
                states.push(pair);
                parent.push(Some((cur, e.clone())));
                queue.push_back(id);
            }
        }
    }
    Ok(PropertyVerdict::pass())
}

/// Two-sided inclusion; the witness comes from whichever side fails first
/// (left-not-in-right preferred).
pub fn equivalent(
    g1: &Generator,
    g2: &Generator,
    kind: LanguageKind,
) -> Result<PropertyVerdict, DesError> {
    let forward = is_sublanguage(g1, g2, kind)?;
    if !forward.holds {
        return Ok(forward);
    }
    is_sublanguage(g2, g1, kind)
}

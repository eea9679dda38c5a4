//! Supremal-sublanguage fixpoints: the supremal controllable sublanguage,
//! the supremal relatively observable sublanguage for a fixed ambient, and
//! their combination.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::checks::{is_controllable, is_relatively_observable};
use crate::error::DesError;
use crate::event::{Event, EventSet};
use crate::generator::{Generator, LanguageKind};
use crate::ops::{equivalent, is_sublanguage, language_intersection, require_same_alphabet};
use crate::witness::Witness;

/// Cooperative cancellation for long-running fixpoints; checked once per
/// round.
#[derive(Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Default)]
pub struct SynthOptions {
    pub cancel: Option<CancelToken>,
    /// Overrides the default round cap (product states × alphabet size).
    pub round_cap: Option<usize>,
}

impl SynthOptions {
    fn check_cancel(&self) -> Result<(), DesError> {
        match &self.cancel {
            Some(token) if token.is_cancelled() => Err(DesError::Cancelled),
            _ => Ok(()),
        }
    }
}

/// Result of a supremal computation.
#[derive(Debug, Clone)]
pub struct SupremalResult {
    pub language: Generator,
    pub iterations: usize,
    pub fixpoint_reached: bool,
    /// The fixed ambient language, for the relative-observability family.
    pub ambient: Option<Generator>,
}

/// Supremal controllable sublanguage of `Lm(k)` with respect to the plant
/// language `L(l)` and the uncontrollable events.
///
/// Standard iteration on the trimmed product of specification and plant:
/// repeatedly delete product states from which the plant can fire an
/// uncontrollable event the specification closure refuses, then trim, until
/// stable.
pub fn sup_controllable(
    k: &Generator,
    l: &Generator,
    sigma_u: &EventSet,
) -> Result<SupremalResult, DesError> {
    sup_controllable_with(k, l, sigma_u, &SynthOptions::default())
}

pub fn sup_controllable_with(
    k: &Generator,
    l: &Generator,
    sigma_u: &EventSet,
    opts: &SynthOptions,
) -> Result<SupremalResult, DesError> {
    require_same_alphabet(k, l)?;
    if let Some(w) = is_sublanguage(k, &crate::checks::generated_as_marked(l), LanguageKind::Marked)?
        .witness
    {
        return Err(DesError::InclusionViolated {
            what: "the specification".into(),
            of: "the plant".into(),
            witness: w.describe(),
        });
    }

    let kt = k.trim();
    if kt.is_empty_marked() {
        return Ok(SupremalResult {
            language: Generator::empty_language(k.alphabet().clone()),
            iterations: 0,
            fixpoint_reached: true,
            ambient: None,
        });
    }
    let uncontrollable: Vec<Event> = sigma_u.intersection(k.alphabet()).cloned().collect();

    // product of K̄-automaton and plant, kept as explicit pair states
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let start = (kt.initial(), l.initial());
    index.insert(start, 0);
    pairs.push(start);
    queue.push_back(start);
    while let Some((qk, ql)) = queue.pop_front() {
        for (e, &nk) in kt.transitions_from(qk) {
            if let Some(nl) = l.step(ql, e) {
                let pair = (nk, nl);
                if !index.contains_key(&pair) {
                    index.insert(pair, pairs.len());
                    pairs.push(pair);
                    queue.push_back(pair);
                }
            }
        }
    }
    let n = pairs.len();
    let mut alive = vec![true; n];
    let step = |i: usize, e: &Event| -> Option<usize> {
        let (qk, ql) = pairs[i];
        match (kt.step(qk, e), l.step(ql, e)) {
            (Some(nk), Some(nl)) => index.get(&(nk, nl)).copied(),
            _ => None,
        }
    };

    let mut iterations = 0usize;
    loop {
        opts.check_cancel()?;
        iterations += 1;
        let mut changed = false;

        // uncontrollability pass
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            let (_, ql) = pairs[i];
            let escapes = uncontrollable.iter().any(|u| {
                l.step(ql, u).is_some() && !step(i, u).map(|j| alive[j]).unwrap_or(false)
            });
            if escapes {
                alive[i] = false;
                changed = true;
            }
        }

        // reachability from the initial pair through alive states
        let mut reach = vec![false; n];
        if alive[0] {
            let mut q = VecDeque::from([0usize]);
            reach[0] = true;
            while let Some(i) = q.pop_front() {
                let (qk, _) = pairs[i];
                for e in kt.transitions_from(qk).keys() {
                    if let Some(j) = step(i, e) {
                        if alive[j] && !reach[j] {
                            reach[j] = true;
                            q.push_back(j);
                        }
                    }
                }
            }
        }

        // co-reachability to a marked pair through alive states
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            let (qk, _) = pairs[i];
            for e in kt.transitions_from(qk).keys() {
                if let Some(j) = step(i, e) {
                    if alive[j] {
                        rev[j].push(i);
                    }
                }
            }
        }
        let mut coreach = vec![false; n];
        let mut q = VecDeque::new();
        for i in 0..n {
            if alive[i] && kt.is_marked(pairs[i].0) {
                coreach[i] = true;
                q.push_back(i);
            }
        }
        while let Some(i) = q.pop_front() {
            for &p in &rev[i] {
                if alive[p] && !coreach[p] {
                    coreach[p] = true;
                    q.push_back(p);
                }
            }
        }

        for i in 0..n {
            if alive[i] && !(reach[i] && coreach[i]) {
                alive[i] = false;
                changed = true;
            }
        }

        if !changed {
            break;
        }
        if !alive[0] {
            return Ok(SupremalResult {
                language: Generator::empty_language(k.alphabet().clone()),
                iterations,
                fixpoint_reached: true,
                ambient: None,
            });
        }
    }

    if !alive[0] {
        return Ok(SupremalResult {
            language: Generator::empty_language(k.alphabet().clone()),
            iterations,
            fixpoint_reached: true,
            ambient: None,
        });
    }

    // rebuild the surviving sub-automaton
    let mut rename = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for i in 0..n {
        if alive[i] {
            rename[i] = kept.len();
            kept.push(i);
        }
    }
    let mut transitions: Vec<BTreeMap<Event, usize>> = vec![BTreeMap::new(); kept.len()];
    let mut marked = BTreeSet::new();
    for (new, &i) in kept.iter().enumerate() {
        let (qk, _) = pairs[i];
        if kt.is_marked(qk) {
            marked.insert(new);
        }
        for e in kt.transitions_from(qk).keys() {
            if let Some(j) = step(i, e) {
                if alive[j] {
                    transitions[new].insert(e.clone(), rename[j]);
                }
            }
        }
    }
    let language = Generator::new(k.alphabet().clone(), transitions, rename[0], marked)?
        .trim();
    Ok(SupremalResult {
        language,
        iterations,
        fixpoint_reached: true,
        ambient: None,
    })
}

/// Supremal `C`-observable sublanguage of `Lm(k)` for a fixed ambient `C`,
/// with respect to the plant language `L(l)` and the observation projection.
///
/// Each round refines the current specification automaton by the set of
/// observation-equivalent partner configurations (a subset automaton over
/// triples tracking `s'` in `C̄`, in the current closure, and in the plant),
/// prunes every refined transition that generates a violating continuation
/// `sσ`, trims and repeats. Pruning at the refined level removes exactly the
/// words no `C`-observable sublanguage of the current language can keep, so
/// the fixpoint is the supremum. The ambient never shrinks with the
/// iterations.
pub fn sup_relatively_observable(
    k: &Generator,
    c: &Generator,
    l: &Generator,
    sigma_o: &EventSet,
) -> Result<SupremalResult, DesError> {
    sup_relatively_observable_with(k, c, l, sigma_o, &SynthOptions::default())
}

pub fn sup_relatively_observable_with(
    k: &Generator,
    c: &Generator,
    l: &Generator,
    sigma_o: &EventSet,
    opts: &SynthOptions,
) -> Result<SupremalResult, DesError> {
    require_same_alphabet(k, l)?;
    require_same_alphabet(k, c)?;
    if let Some(w) = is_sublanguage(k, c, LanguageKind::Marked)?.witness {
        return Err(DesError::InclusionViolated {
            what: "the specification".into(),
            of: "the ambient language".into(),
            witness: w.describe(),
        });
    }

    let alphabet = k.alphabet().clone();
    let ambient = c.trim();
    let mut current = k.trim();
    let mut iterations = 0usize;
    let cap = opts
        .round_cap
        .unwrap_or_else(|| (current.state_count() * (alphabet.len() + 1) + 1) * 8 + 64);

    loop {
        opts.check_cancel()?;
        if current.is_empty_marked() {
            let language = Generator::empty_language(alphabet.clone());
            return Ok(SupremalResult {
                language,
                iterations,
                fixpoint_reached: true,
                ambient: Some(ambient),
            });
        }
        iterations += 1;
        if iterations > cap {
            return Err(DesError::IterationCapExceeded { rounds: iterations });
        }

        let pruned = prune_relative_observability_violations(&current, &ambient, l, sigma_o)?;
        match pruned {
            None => break,
            Some(next) => current = next,
        }
    }

    let verdict = is_relatively_observable(&current, &ambient, l, sigma_o)?;
    if !verdict.holds {
        return Err(DesError::invalid(
            "internal error: relative-observability fixpoint failed its own check",
        ));
    }
    Ok(SupremalResult {
        language: current,
        iterations,
        fixpoint_reached: true,
        ambient: Some(ambient),
    })
}

/// One pruning round. Returns `None` when the current language has no
/// violation, otherwise the pruned and trimmed successor.
fn prune_relative_observability_violations(
    current: &Generator,
    ambient: &Generator,
    plant: &Generator,
    sigma_o: &EventSet,
) -> Result<Option<Generator>, DesError> {
    let alphabet = current.alphabet().clone();
    let observable: Vec<Event> = sigma_o.intersection(&alphabet).cloned().collect();
    let unobservable: Vec<Event> = alphabet
        .iter()
        .filter(|e| !sigma_o.contains(*e))
        .cloned()
        .collect();

    // Partner triples (state in C̄, optional state in K̄current, state in L)
    // reachable by words s' with the observation seen so far. Partners must
    // stay inside C̄ ∩ L; the middle component falls to None when s' leaves
    // the current closure.
    type Triple = (usize, Option<usize>, usize);
    let uclose = |seed: BTreeSet<Triple>| -> BTreeSet<Triple> {
        let mut set = seed;
        let mut stack: Vec<Triple> = set.iter().cloned().collect();
        while let Some((yc, yk, z)) = stack.pop() {
            for e in &unobservable {
                if let (Some(nyc), Some(nz)) = (ambient.step(yc, e), plant.step(z, e)) {
                    let nyk = yk.and_then(|q| current.step(q, e));
                    let t = (nyc, nyk, nz);
                    if set.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
        set
    };

    let ambient_empty = ambient.is_empty_marked();
    let v0: BTreeSet<Triple> = if ambient_empty {
        BTreeSet::new()
    } else {
        uclose(
            [(ambient.initial(), Some(current.initial()), plant.initial())]
                .into_iter()
                .collect(),
        )
    };

    // subset automaton over partner triples, advanced by observable events
    let mut v_states: Vec<BTreeSet<Triple>> = vec![v0.clone()];
    let mut v_index: BTreeMap<BTreeSet<Triple>, usize> = BTreeMap::new();
    v_index.insert(v0, 0);
    let mut v_trans: Vec<BTreeMap<Event, usize>> = vec![BTreeMap::new()];
    let mut v_queue = VecDeque::from([0usize]);
    while let Some(v) = v_queue.pop_front() {
        for e in &observable {
            let moved: BTreeSet<Triple> = v_states[v]
                .iter()
                .filter_map(|&(yc, yk, z)| {
                    match (ambient.step(yc, e), plant.step(z, e)) {
                        (Some(nyc), Some(nz)) => {
                            Some((nyc, yk.and_then(|q| current.step(q, e)), nz))
                        }
                        _ => None,
                    }
                })
                .collect();
            let next = uclose(moved);
            let dst = match v_index.get(&next) {
                Some(&d) => d,
                None => {
                    let d = v_states.len();
                    if d >= crate::checks::TWIN_STATE_CAP {
                        return Err(DesError::StateCapExceeded {
                            states: d,
                            cap: crate::checks::TWIN_STATE_CAP,
                        });
                    }
                    v_index.insert(next.clone(), d);
                    v_states.push(next);
                    v_trans.push(BTreeMap::new());
                    v_queue.push_back(d);
                    d
                }
            };
            v_trans[v].insert(e.clone(), dst);
        }
    }

    // refined product (current state, partner subset)
    let mut w_states: Vec<(usize, usize)> = vec![(current.initial(), 0)];
    let mut w_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    w_index.insert(w_states[0], 0);
    let mut w_trans: Vec<BTreeMap<Event, usize>> = vec![BTreeMap::new()];
    let mut w_marked: BTreeSet<usize> = BTreeSet::new();
    if current.is_marked(current.initial()) {
        w_marked.insert(0);
    }
    let mut w_queue = VecDeque::from([0usize]);
    while let Some(w) = w_queue.pop_front() {
        let (x, v) = w_states[w];
        for (e, &nx) in current.transitions_from(x) {
            let nv = if sigma_o.contains(e) {
                *v_trans[v].get(e).expect("observable moves are total")
            } else {
                v
            };
            let pair = (nx, nv);
            let dst = match w_index.get(&pair) {
                Some(&d) => d,
                None => {
                    let d = w_states.len();
                    if d >= crate::checks::TWIN_STATE_CAP {
                        return Err(DesError::StateCapExceeded {
                            states: d,
                            cap: crate::checks::TWIN_STATE_CAP,
                        });
                    }
                    w_index.insert(pair, d);
                    w_states.push(pair);
                    w_trans.push(BTreeMap::new());
                    if current.is_marked(nx) {
                        w_marked.insert(d);
                    }
                    w_queue.push_back(d);
                    d
                }
            };
            w_trans[w].insert(e.clone(), dst);
        }
    }

    // violating refined transitions: sσ ∈ K̄ current, some partner with
    // s'σ ∈ L and s'σ ∉ K̄ current
    let mut pruned_any = false;
    for w in 0..w_states.len() {
        let (x, v) = w_states[w];
        let violating: Vec<Event> = current
            .transitions_from(x)
            .keys()
            .filter(|sigma| {
                v_states[v].iter().any(|&(_, yk, z)| {
                    plant.step(z, sigma).is_some()
                        && yk.and_then(|q| current.step(q, sigma)).is_none()
                })
            })
            .cloned()
            .collect();
        for sigma in violating {
            w_trans[w].remove(&sigma);
            pruned_any = true;
        }
    }
    if !pruned_any {
        return Ok(None);
    }
    let next = Generator::new(alphabet, w_trans, 0, w_marked)?.trim();
    Ok(Some(next))
}

/// Supremal controllable and `(K ∩ L)`-observable sublanguage: alternates the
/// two single-property operators from `K ∩ L` with the ambient pinned to
/// `K ∩ L`, until a joint fixpoint.
pub fn sup_c_and_ro(
    k: &Generator,
    l: &Generator,
    sigma_u: &EventSet,
    sigma_o: &EventSet,
) -> Result<SupremalResult, DesError> {
    sup_c_and_ro_with(k, l, sigma_u, sigma_o, &SynthOptions::default())
}

pub fn sup_c_and_ro_with(
    k: &Generator,
    l: &Generator,
    sigma_u: &EventSet,
    sigma_o: &EventSet,
    opts: &SynthOptions,
) -> Result<SupremalResult, DesError> {
    require_same_alphabet(k, l)?;
    let ambient = language_intersection(&k.trim(), &crate::checks::generated_as_marked(l))?;
    let mut current = ambient.clone();
    let mut iterations = 0usize;
    let cap = opts
        .round_cap
        .unwrap_or_else(|| current.state_count() * (k.alphabet().len() + 1) + 16);

    loop {
        opts.check_cancel()?;
        iterations += 1;
        if iterations > cap {
            return Err(DesError::IterationCapExceeded { rounds: iterations });
        }
        let after_c = sup_controllable_with(&current, l, sigma_u, opts)?.language;
        let after_ro =
            sup_relatively_observable_with(&after_c, &ambient, l, sigma_o, opts)?.language;
        let stable = equivalent(&after_ro, &current, LanguageKind::Marked)?.holds;
        current = after_ro;
        if stable {
            break;
        }
    }

    // the joint fixpoint is both controllable and ambient-observable
    if !current.is_empty_marked() {
        let c_ok = is_controllable(&current, l, sigma_u)?.holds;
        let ro_ok = is_relatively_observable(&current, &ambient, l, sigma_o)?.holds;
        if !(c_ok && ro_ok) {
            return Err(DesError::invalid(
                "internal error: combined fixpoint failed its own checks",
            ));
        }
    }
    Ok(SupremalResult {
        language: current,
        iterations,
        fixpoint_reached: true,
        ambient: Some(ambient),
    })
}

/// Convenience used by tests and pipelines: language equality modulo
/// representation.
pub fn same_language(a: &Generator, b: &Generator) -> Result<bool, DesError> {
    Ok(equivalent(a, b, LanguageKind::Marked)?.holds)
}

/// Debug helper: the witness separating two languages, if any.
pub fn separating_witness(a: &Generator, b: &Generator) -> Result<Option<Witness>, DesError> {
    Ok(equivalent(a, b, LanguageKind::Marked)?.witness)
}

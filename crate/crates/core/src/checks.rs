//! Decision procedures with witnesses for the monolithic language properties:
//! controllability, observability, normality, relative observability,
//! nonconflictingness, Lm-closedness and the supervisor-existence bundle.
//!
//! Conventions. `K` always means the marked language of the `k` argument and
//! `K̄` its prefix closure; the plant language is the generated language
//! `L(l)`, which is prefix-closed by construction. Every `false` verdict
//! carries a witness that replays to a confirmed violation (see [`replay`]).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::DesError;
use crate::event::{Event, EventSet};
use crate::generator::{Generator, LanguageKind};
use crate::ops::{
    inverse_project, is_sublanguage, language_intersection, project, require_same_alphabet,
    sync_product,
};
use crate::witness::{PropertyVerdict, Witness};

/// Hard cap on twin-construction state spaces; exceeding it aborts with a
/// sizing error instead of silently truncating.
pub const TWIN_STATE_CAP: usize = 500_000;

/// Which events the observability quantifier ranges over.
///
/// The supervisor-existence characterization only needs controllable events
/// (uncontrollable ones are covered by controllability), which is the
/// default. Relative observability always quantifies over the full alphabet;
/// `AllEvents` exposes the same quantification for plain observability so the
/// two notions can be compared directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SigmaQuantification {
    #[default]
    ControllableOnly,
    AllEvents,
}

/// Names every decidable property the library exposes, for dispatch from the
/// command line and the oracle comparison driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckProperty {
    Controllable,
    Observable,
    Normal,
    RelativelyObservable,
    Nonconflicting,
    LmClosed,
    SupervisorExists,
    ConditionallyDecomposable,
    ConditionallyControllable,
    ConditionallyObservable,
    ConditionallyClosed,
    ConditionallyNormal,
    ConditionallyCObservable,
    ConditionallyStrongCObservable,
}

impl CheckProperty {
    pub const ALL: [CheckProperty; 14] = [
        CheckProperty::Controllable,
        CheckProperty::Observable,
        CheckProperty::Normal,
        CheckProperty::RelativelyObservable,
        CheckProperty::Nonconflicting,
        CheckProperty::LmClosed,
        CheckProperty::SupervisorExists,
        CheckProperty::ConditionallyDecomposable,
        CheckProperty::ConditionallyControllable,
        CheckProperty::ConditionallyObservable,
        CheckProperty::ConditionallyClosed,
        CheckProperty::ConditionallyNormal,
        CheckProperty::ConditionallyCObservable,
        CheckProperty::ConditionallyStrongCObservable,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckProperty::Controllable => "controllable",
            CheckProperty::Observable => "observable",
            CheckProperty::Normal => "normal",
            CheckProperty::RelativelyObservable => "relatively-observable",
            CheckProperty::Nonconflicting => "nonconflicting",
            CheckProperty::LmClosed => "lm-closed",
            CheckProperty::SupervisorExists => "supervisor-exists",
            CheckProperty::ConditionallyDecomposable => "conditionally-decomposable",
            CheckProperty::ConditionallyControllable => "conditionally-controllable",
            CheckProperty::ConditionallyObservable => "conditionally-observable",
            CheckProperty::ConditionallyClosed => "conditionally-closed",
            CheckProperty::ConditionallyNormal => "conditionally-normal",
            CheckProperty::ConditionallyCObservable => "conditionally-c-observable",
            CheckProperty::ConditionallyStrongCObservable => {
                "conditionally-strong-c-observable"
            }
        }
    }
}

impl fmt::Display for CheckProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckProperty {
    type Err = DesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckProperty::ALL
            .iter()
            .find(|p| p.name() == s)
            .copied()
            .ok_or_else(|| DesError::invalid(format!("unknown property `{s}`")))
    }
}

/// Verdict bundle of the supervisor-existence characterization: a nonblocking
/// supervisor achieving `K` exists iff `K` is controllable, `Lm(G)`-closed and
/// observable.
#[derive(Debug, Clone, Serialize)]
pub struct SupervisorExistence {
    pub exists: bool,
    pub controllable: PropertyVerdict,
    pub lm_closed: PropertyVerdict,
    pub observable: PropertyVerdict,
}

fn require_inclusion(
    what: &str,
    of: &str,
    k: &Generator,
    big: &Generator,
    kind: LanguageKind,
) -> Result<(), DesError> {
    let v = is_sublanguage(k, big, kind)?;
    match v.witness {
        None => Ok(()),
        Some(w) => Err(DesError::InclusionViolated {
            what: what.to_string(),
            of: of.to_string(),
            witness: w.describe(),
        }),
    }
}

/// Marks every state of the canonical form, so `Lm(result) = L(g)`.
pub(crate) fn generated_as_marked(g: &Generator) -> Generator {
    let c = g.canonicalize();
    let marked = (0..c.state_count()).collect();
    Generator::new(c.alphabet().clone(), transitions_of(&c), 0, marked)
        .expect("canonical form stays valid")
}

fn transitions_of(g: &Generator) -> Vec<BTreeMap<Event, usize>> {
    (0..g.state_count())
        .map(|q| g.transitions_from(q).clone())
        .collect()
}

/// Controllability: `K̄ Σu ∩ L(G) ⊆ K̄`.
///
/// The witness is the pair (s, u) with `s ∈ K̄`, `su ∈ L(G) \ K̄`, found by
/// breadth-first search, so it is shortest and deterministic.
pub fn is_controllable(
    k: &Generator,
    l: &Generator,
    sigma_u: &EventSet,
) -> Result<PropertyVerdict, DesError> {
    require_same_alphabet(k, l)?;
    require_inclusion("the specification", "the plant", k, &generated_as_marked(l), LanguageKind::Marked)?;

    let kc = k.trim(); // L(kc) = K̄
    if kc.is_empty_marked() {
        return Ok(PropertyVerdict::pass());
    }
    let uncontrollable: Vec<Event> = sigma_u
        .intersection(k.alphabet())
        .cloned()
        .collect();

    // BFS over the (K̄, L) product; every reachable pair corresponds to a
    // word of K̄ (⊆ L).
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut parent: Vec<Option<(usize, Event)>> = vec![None];
    let mut states = vec![(kc.initial(), l.initial())];
    index.insert(states[0], 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        let (qk, ql) = states[cur];
        for u in &uncontrollable {
            if l.step(ql, u).is_some() && kc.step(qk, u).is_none() {
                let s = rebuild_word(&parent, cur);
                return Ok(PropertyVerdict::fail(Witness::pair(
                    s.clone(),
                    s,
                    u.clone(),
                    "uncontrollable continuation leaves the specification closure",
                )));
            }
        }
        for (e, &nk) in kc.transitions_from(qk) {
            if let Some(nl) = l.step(ql, e) {
                let pair = (nk, nl);
                if !index.contains_key(&pair) {
                    let id = states.len();
                    index.insert(pair, id);
                    states.push(pair);
                    parent.push(Some((cur, e.clone())));
                    queue.push_back(id);
                }
            }
        }
    }
    Ok(PropertyVerdict::pass())
}

fn rebuild_word(parent: &[Option<(usize, Event)>], mut at: usize) -> Vec<Event> {
    let mut w = Vec::new();
    while let Some((prev, e)) = parent[at].clone() {
        w.push(e);
        at = prev;
    }
    w.reverse();
    w
}

/// Observability with the supervisor-existence quantification (σ ranges over
/// the controllable events by default).
pub fn is_observable(
    k: &Generator,
    l: &Generator,
    sigma_o: &EventSet,
    sigma_c: &EventSet,
) -> Result<PropertyVerdict, DesError> {
    is_observable_with(k, l, sigma_o, sigma_c, SigmaQuantification::default())
}

pub fn is_observable_with(
    k: &Generator,
    l: &Generator,
    sigma_o: &EventSet,
    sigma_c: &EventSet,
    quantification: SigmaQuantification,
) -> Result<PropertyVerdict, DesError> {
    require_same_alphabet(k, l)?;
    require_inclusion("the specification", "the plant", k, &generated_as_marked(l), LanguageKind::Marked)?;
    let sigma_range: EventSet = match quantification {
        SigmaQuantification::ControllableOnly => {
            sigma_c.intersection(k.alphabet()).cloned().collect()
        }
        SigmaQuantification::AllEvents => k.alphabet().clone(),
    };
    twin_search(k, k, l, sigma_o, &sigma_range, "observability")
}

/// Relative observability of `K` w.r.t. the ambient `C`, the plant and the
/// observation projection. Quantifies σ over the whole alphabet.
///
/// Only `Lm(k) ⊆ Lm(c)` is required; words of `C̄` outside the plant can never
/// witness a violation (the plant condition `s'σ ∈ L` fails), so the search
/// effectively runs over `C̄ ∩ L`. This keeps the check usable at the
/// component level of conditional properties, where the projected ambient may
/// leave the component plant.
pub fn is_relatively_observable(
    k: &Generator,
    c: &Generator,
    l: &Generator,
    sigma_o: &EventSet,
) -> Result<PropertyVerdict, DesError> {
    require_same_alphabet(k, l)?;
    require_same_alphabet(k, c)?;
    require_inclusion("the specification", "the ambient language", k, c, LanguageKind::Marked)?;
    twin_search(k, c, l, sigma_o, &k.alphabet().clone(), "relative observability")
}

/// Shared twin search for observability-style properties.
///
/// Tracks (x, yc, yk, z): x follows `s` in K̄; yc follows `s'` in C̄; z follows
/// `s'` in the plant; yk optionally follows `s'` in K̄ to decide the
/// conclusion. Observable events advance both words, unobservable events
/// advance one side at a time, so reachable twin states are exactly the pairs
/// (s, s') with equal observations. The first violation in BFS order yields
/// the witness.
fn twin_search(
    k: &Generator,
    c: &Generator,
    l: &Generator,
    sigma_o: &EventSet,
    sigma_range: &EventSet,
    what: &str,
) -> Result<PropertyVerdict, DesError> {
    let kc = k.trim();
    if kc.is_empty_marked() {
        return Ok(PropertyVerdict::pass());
    }
    let cc = c.trim();
    if cc.is_empty_marked() {
        // C̄ empty means no candidate s' at all.
        return Ok(PropertyVerdict::pass());
    }
    let alphabet = k.alphabet().clone();
    let observable: Vec<Event> = sigma_o.intersection(&alphabet).cloned().collect();
    let unobservable: Vec<Event> = alphabet
        .iter()
        .filter(|e| !sigma_o.contains(*e))
        .cloned()
        .collect();
    let range: Vec<Event> = sigma_range.intersection(&alphabet).cloned().collect();

    type Twin = (usize, usize, Option<usize>, usize);
    #[derive(Clone)]
    enum Side {
        Both(Event),
        S(Event),
        SPrime(Event),
    }

    let start: Twin = (kc.initial(), cc.initial(), Some(kc.initial()), l.initial());
    let mut index: BTreeMap<Twin, usize> = BTreeMap::new();
    let mut states = vec![start];
    let mut parent: Vec<Option<(usize, Side)>> = vec![None];
    index.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);

    let rebuild = |parent: &[Option<(usize, Side)>], mut at: usize| -> (Vec<Event>, Vec<Event>) {
        let mut s = Vec::new();
        let mut sp = Vec::new();
        while let Some((prev, side)) = parent[at].clone() {
            match side {
                Side::Both(e) => {
                    s.push(e.clone());
                    sp.push(e);
                }
                Side::S(e) => s.push(e),
                Side::SPrime(e) => sp.push(e),
            }
            at = prev;
        }
        s.reverse();
        sp.reverse();
        (s, sp)
    };

    while let Some(cur) = queue.pop_front() {
        let (x, yc, yk, z) = states[cur];
        for sigma in &range {
            let s_continues = kc.step(x, sigma).is_some();
            let plant_allows = l.step(z, sigma).is_some();
            let sp_stays = yk.and_then(|q| kc.step(q, sigma)).is_some();
            if s_continues && plant_allows && !sp_stays {
                let (s, sp) = rebuild(&parent, cur);
                return Ok(PropertyVerdict::fail(Witness::pair(
                    s,
                    sp,
                    sigma.clone(),
                    format!("{what} violation: the continuation escapes the specification closure"),
                )));
            }
        }

        let push = |states: &mut Vec<Twin>,
                        parent: &mut Vec<Option<(usize, Side)>>,
                        queue: &mut VecDeque<usize>,
                        index: &mut BTreeMap<Twin, usize>,
                        twin: Twin,
                        side: Side|
         -> Result<(), DesError> {
            if !index.contains_key(&twin) {
                if states.len() >= TWIN_STATE_CAP {
                    return Err(DesError::StateCapExceeded {
                        states: states.len(),
                        cap: TWIN_STATE_CAP,
                    });
                }
                index.insert(twin, states.len());
                states.push(twin);
                parent.push(Some((cur, side)));
                queue.push_back(states.len() - 1);
            }
            Ok(())
        };

        for e in &observable {
            if let (Some(nx), Some(nyc), Some(nz)) =
                (kc.step(x, e), cc.step(yc, e), l.step(z, e))
            {
                let nyk = yk.and_then(|q| kc.step(q, e));
                push(
                    &mut states,
                    &mut parent,
                    &mut queue,
                    &mut index,
                    (nx, nyc, nyk, nz),
                    Side::Both(e.clone()),
                )?;
            }
        }
        for e in &unobservable {
            if let Some(nx) = kc.step(x, e) {
                push(
                    &mut states,
                    &mut parent,
                    &mut queue,
                    &mut index,
                    (nx, yc, yk, z),
                    Side::S(e.clone()),
                )?;
            }
            if let (Some(nyc), Some(nz)) = (cc.step(yc, e), l.step(z, e)) {
                let nyk = yk.and_then(|q| kc.step(q, e));
                push(
                    &mut states,
                    &mut parent,
                    &mut queue,
                    &mut index,
                    (x, nyc, nyk, nz),
                    Side::SPrime(e.clone()),
                )?;
            }
        }
    }
    Ok(PropertyVerdict::pass())
}

/// Normality: `K̄ = Q⁻¹Q(K̄) ∩ L(G)`. The left-to-right inclusion always
/// holds; the witness is a word of the right side outside `K̄`.
pub fn is_normal(
    k: &Generator,
    l: &Generator,
    sigma_o: &EventSet,
) -> Result<PropertyVerdict, DesError> {
    require_same_alphabet(k, l)?;
    require_inclusion("the specification", "the plant", k, &generated_as_marked(l), LanguageKind::Marked)?;
    let closure = k.prefix_closure();
    if closure.is_empty_marked() {
        return Ok(PropertyVerdict::pass());
    }
    let observed = project(&closure, &sigma_o.intersection(k.alphabet()).cloned().collect());
    let lifted = inverse_project(&observed, k.alphabet())?;
    let rhs = language_intersection(&lifted, &generated_as_marked(l))?;
    let mut verdict = is_sublanguage(&rhs, &closure, LanguageKind::Marked)?;
    if let Some(Witness::Word { note, .. }) = verdict.witness.as_mut() {
        *note = "observation-equivalent plant word outside the specification closure".into();
    }
    Ok(verdict)
}

/// Nonconflictingness: `closure(L1 ∥ L2) = closure(L1) ∥ closure(L2)`.
/// Only the right-to-left inclusion can fail; the witness is a word of the
/// product of closures that no marked product word extends.
pub fn is_nonconflicting(g1: &Generator, g2: &Generator) -> Result<PropertyVerdict, DesError> {
    let left = sync_product(g1, g2).prefix_closure();
    let right = sync_product(&g1.prefix_closure(), &g2.prefix_closure());
    let mut verdict = is_sublanguage(&right, &left, LanguageKind::Marked)?;
    if let Some(Witness::Word { note, .. }) = verdict.witness.as_mut() {
        *note = "word of both closures that extends to no marked word of the composition".into();
    }
    Ok(verdict)
}

/// `Lm(G)`-closedness: `K = K̄ ∩ Lm(G)`. The witness is a word of
/// `K̄ ∩ Lm(G)` outside `K`.
pub fn is_lm_closed(k: &Generator, g: &Generator) -> Result<PropertyVerdict, DesError> {
    require_same_alphabet(k, g)?;
    require_inclusion("the specification", "the marked plant language", k, g, LanguageKind::Marked)?;
    let closure = k.prefix_closure();
    if closure.is_empty_marked() {
        return Ok(PropertyVerdict::pass());
    }
    let rhs = language_intersection(&closure, g)?;
    let mut verdict = is_sublanguage(&rhs, k, LanguageKind::Marked)?;
    if let Some(Witness::Word { note, .. }) = verdict.witness.as_mut() {
        *note = "marked plant word inside the closure but outside the specification".into();
    }
    Ok(verdict)
}

/// The supervisor-existence bundle: a nonblocking supervisor with
/// `Lm(S/G) = K` exists iff `K` is controllable, `Lm(G)`-closed and
/// observable. An empty `K` is rejected as an input error, not as `false`.
pub fn supervisor_exists(
    k: &Generator,
    g: &Generator,
    sigma_u: &EventSet,
    sigma_o: &EventSet,
    sigma_c: &EventSet,
) -> Result<SupervisorExistence, DesError> {
    if k.is_empty_marked() {
        return Err(DesError::EmptySpecification);
    }
    require_same_alphabet(k, g)?;
    require_inclusion("the specification", "the marked plant language", k, g, LanguageKind::Marked)?;
    let controllable = is_controllable(k, g, sigma_u)?;
    let lm_closed = is_lm_closed(k, g)?;
    let observable = is_observable(k, g, sigma_o, sigma_c)?;
    Ok(SupervisorExistence {
        exists: controllable.holds && lm_closed.holds && observable.holds,
        controllable,
        lm_closed,
        observable,
    })
}

/// Witness replay: reconfirms a violation directly from word membership,
/// independently of the search that produced it.
pub mod replay {
    use super::*;
    use crate::words::erase;

    fn in_closure(k: &Generator, w: &[Event]) -> bool {
        let t = k.trim();
        !t.is_empty_marked() && t.accepts(w, LanguageKind::Generated)
    }

    pub fn controllability(k: &Generator, l: &Generator, sigma_u: &EventSet, w: &Witness) -> bool {
        match w {
            Witness::Pair { s, sigma, .. } => {
                let mut su = s.clone();
                su.push(sigma.clone());
                sigma_u.contains(sigma)
                    && in_closure(k, s)
                    && l.accepts(&su, LanguageKind::Generated)
                    && !in_closure(k, &su)
            }
            _ => false,
        }
    }

    pub fn observability(
        k: &Generator,
        l: &Generator,
        sigma_o: &EventSet,
        sigma_range: &EventSet,
        w: &Witness,
    ) -> bool {
        relative_observability_inner(k, k, l, sigma_o, sigma_range, w)
    }

    pub fn relative_observability(
        k: &Generator,
        c: &Generator,
        l: &Generator,
        sigma_o: &EventSet,
        w: &Witness,
    ) -> bool {
        relative_observability_inner(k, c, l, sigma_o, k.alphabet(), w)
    }

    fn relative_observability_inner(
        k: &Generator,
        c: &Generator,
        l: &Generator,
        sigma_o: &EventSet,
        sigma_range: &EventSet,
        w: &Witness,
    ) -> bool {
        match w {
            Witness::Pair { s, s_prime, sigma, .. } => {
                let mut s_sigma = s.clone();
                s_sigma.push(sigma.clone());
                let mut sp_sigma = s_prime.clone();
                sp_sigma.push(sigma.clone());
                sigma_range.contains(sigma)
                    && erase(s, sigma_o) == erase(s_prime, sigma_o)
                    && in_closure(k, &s_sigma)
                    && in_closure(c, s_prime)
                    && l.accepts(&sp_sigma, LanguageKind::Generated)
                    && !in_closure(k, &sp_sigma)
            }
            _ => false,
        }
    }

    pub fn normality(k: &Generator, l: &Generator, sigma_o: &EventSet, w: &Witness) -> bool {
        match w {
            Witness::Word { word, .. } => {
                let closure = k.prefix_closure();
                let obs: EventSet = sigma_o.intersection(k.alphabet()).cloned().collect();
                let observed = project(&closure, &obs);
                l.accepts(word, LanguageKind::Generated)
                    && observed.accepts(&erase(word, &obs), LanguageKind::Marked)
                    && !in_closure(k, word)
            }
            _ => false,
        }
    }

    pub fn nonconflicting(g1: &Generator, g2: &Generator, w: &Witness) -> bool {
        match w {
            Witness::Word { word, .. } => {
                let right = sync_product(&g1.prefix_closure(), &g2.prefix_closure());
                let left = sync_product(g1, g2).prefix_closure();
                right.accepts(word, LanguageKind::Marked)
                    && !left.accepts(word, LanguageKind::Marked)
            }
            _ => false,
        }
    }

    pub fn lm_closed(k: &Generator, g: &Generator, w: &Witness) -> bool {
        match w {
            Witness::Word { word, .. } => {
                in_closure(k, word)
                    && g.accepts(word, LanguageKind::Marked)
                    && !k.accepts(word, LanguageKind::Marked)
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::event_set;
    use crate::words::{word, word_set};

    fn gen(alphabet: &[&str], words: &[&str]) -> Generator {
        Generator::from_words(event_set(alphabet.iter().copied()), &word_set(words.iter().copied()))
            .unwrap()
    }

    fn closed(alphabet: &[&str], words: &[&str]) -> Generator {
        gen(alphabet, words).prefix_closure()
    }

    #[test]
    fn whole_plant_language_is_controllable() {
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let v = is_controllable(&l, &l, &event_set(["tau"])).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn everything_is_controllable_without_uncontrollable_events() {
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let k = gen(&["a", "tau"], &["a"]);
        assert!(is_controllable(&k, &l, &EventSet::new()).unwrap().holds);
    }

    #[test]
    fn uncontrollable_escape_is_detected_with_its_witness() {
        // K = {a}, L = closure{a, τa}, Σu = {τ}: ε·τ ∈ L \ K̄.
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let k = gen(&["a", "tau"], &["a"]);
        let v = is_controllable(&k, &l, &event_set(["tau"])).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        match &w {
            Witness::Pair { s, sigma, .. } => {
                assert!(s.is_empty());
                assert_eq!(sigma, &Event::new("tau"));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(replay::controllability(&k, &l, &event_set(["tau"]), &w));
    }

    #[test]
    fn full_observation_makes_every_specification_observable() {
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let k = gen(&["a", "tau"], &["a"]);
        let v = is_observable(&k, &l, &event_set(["a", "tau"]), &event_set(["a", "tau"])).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn partial_observation_violation_is_found() {
        // K = {a,τ} over {a,τ}, L = closure{a,τa}, Σo = {a}, Σc = {a,τ}:
        // s = ε, s' = τ, σ = a gives τa ∈ L \ K̄.
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let k = gen(&["a", "tau"], &["a", "tau"]);
        let v = is_observable(&k, &l, &event_set(["a"]), &event_set(["a", "tau"])).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        match &w {
            Witness::Pair { s, s_prime, sigma, .. } => {
                assert!(s.is_empty());
                assert_eq!(s_prime, &word(["tau"]));
                assert_eq!(sigma, &Event::new("a"));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(replay::observability(
            &k,
            &l,
            &event_set(["a"]),
            &event_set(["a", "tau"]),
            &w
        ));
    }

    #[test]
    fn empty_specification_is_observable() {
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let k = Generator::empty_language(event_set(["a", "tau"]));
        assert!(is_observable(&k, &l, &EventSet::new(), &event_set(["a", "tau"]))
            .unwrap()
            .holds);
    }

    #[test]
    fn normality_under_full_observation_and_its_failure_under_partial() {
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let k = gen(&["a", "tau"], &["a"]);
        assert!(is_normal(&k, &l, &event_set(["a", "tau"])).unwrap().holds);

        // Σo = {a}: Q⁻¹Q(K̄) ∩ L contains both τ and τa outside K̄; the
        // breadth-first witness is the shorter one.
        let v = is_normal(&k, &l, &event_set(["a"])).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        match &w {
            Witness::Word { word: ww, .. } => assert_eq!(ww, &word(["tau"])),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(replay::normality(&k, &l, &event_set(["a"]), &w));
    }

    #[test]
    fn component_normality_with_no_observable_events() {
        // P2+k(K2) = {τ} against the plant closure{τ} with Σo ∩ Σ2 = ∅:
        // Q⁻¹Q({ε,τ}) ∩ {ε,τ} = {ε,τ}.
        let l = closed(&["tau"], &["tau"]);
        let k = gen(&["tau"], &["tau"]);
        assert!(is_normal(&k, &l, &EventSet::new()).unwrap().holds);
    }

    #[test]
    fn relative_observability_with_ambient_equal_to_the_specification() {
        // coincides with observability quantified over the whole alphabet
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let k = gen(&["a", "tau"], &["a", "tau"]);
        let ro = is_relatively_observable(&k, &k, &l, &event_set(["a"])).unwrap();
        let ob = is_observable_with(
            &k,
            &l,
            &event_set(["a"]),
            &EventSet::new(),
            SigmaQuantification::AllEvents,
        )
        .unwrap();
        assert_eq!(ro.holds, ob.holds);
        assert!(!ro.holds);
        let w = ro.witness.unwrap();
        match &w {
            Witness::Pair { s, s_prime, sigma, .. } => {
                assert!(s.is_empty());
                assert_eq!(s_prime, &word(["tau"]));
                assert_eq!(sigma, &Event::new("a"));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(replay::relative_observability(&k, &k, &l, &event_set(["a"]), &w));
    }

    #[test]
    fn empty_specification_is_relatively_observable() {
        let l = closed(&["a", "tau"], &["a", "tau.a"]);
        let empty = Generator::empty_language(event_set(["a", "tau"]));
        assert!(is_relatively_observable(&empty, &empty, &l, &EventSet::new())
            .unwrap()
            .holds);
    }

    #[test]
    fn prefix_closed_pairs_never_conflict() {
        let g1 = closed(&["a", "b"], &["a.b"]);
        let g2 = closed(&["a", "c"], &["a.c"]);
        assert!(is_nonconflicting(&g1, &g2).unwrap().holds);

        let s1 = gen(&["a", "b", "c"], &["a"]);
        let s2 = gen(&["a", "b", "c"], &["a"]);
        assert!(is_nonconflicting(&s1, &s2).unwrap().holds);
    }

    #[test]
    fn conflicting_pair_has_a_shortest_witness() {
        // L1 = {ab}, L2 = {ac} over the shared alphabet {a,b,c}: the marked
        // product is empty while both closures share `a`.
        let g1 = gen(&["a", "b", "c"], &["a.b"]);
        let g2 = gen(&["a", "b", "c"], &["a.c"]);
        let v = is_nonconflicting(&g1, &g2).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        match &w {
            // ε itself is not extendable: BFS returns the shortest word.
            Witness::Word { word: ww, .. } => assert_eq!(ww, &Vec::<Event>::new()),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(replay::nonconflicting(&g1, &g2, &w));
    }

    #[test]
    fn lm_closedness_examples() {
        let g = gen(&["a", "b"], &["a", "a.b"]);
        assert!(is_lm_closed(&g, &g).unwrap().holds);

        let k = gen(&["a", "b"], &["a.b"]);
        let v = is_lm_closed(&k, &g).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        match &w {
            Witness::Word { word: ww, .. } => assert_eq!(ww, &word(["a"])),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(replay::lm_closed(&k, &g, &w));

        // prefix-closed K inside prefix-closed Lm(G) is always closed
        let pk = closed(&["a", "b"], &["a"]);
        let pg = closed(&["a", "b"], &["a", "a.b"]);
        assert!(is_lm_closed(&pk, &pg).unwrap().holds);
    }

    #[test]
    fn supervisor_existence_bundle() {
        let g = closed(&["a", "tau"], &["a", "tau.a"]);
        let full = supervisor_exists(
            &g,
            &g,
            &EventSet::new(),
            &event_set(["a", "tau"]),
            &event_set(["a", "tau"]),
        )
        .unwrap();
        assert!(full.exists);

        // the union specification fails observability on the small plant
        let plant = {
            let g1 = closed(&["a", "tau"], &["a", "tau.a"]);
            let g2 = closed(&["tau"], &["tau"]);
            generated_as_marked(&sync_product(&g1, &g2))
        };
        let k = gen(&["a", "tau"], &["a", "tau"]);
        let bundle = supervisor_exists(
            &k,
            &plant,
            &EventSet::new(),
            &event_set(["a"]),
            &event_set(["a", "tau"]),
        )
        .unwrap();
        assert!(bundle.controllable.holds);
        assert!(!bundle.observable.holds);
        assert!(!bundle.exists);
        assert!(bundle.observable.witness.is_some());

        let empty = Generator::empty_language(event_set(["a", "tau"]));
        assert!(matches!(
            supervisor_exists(&empty, &plant, &EventSet::new(), &EventSet::new(), &EventSet::new()),
            Err(DesError::EmptySpecification)
        ));
    }
}

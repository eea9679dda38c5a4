//! Independent brute-force reference implementations over bounded word sets.
//!
//! Everything here works on finite snapshots of languages: each property is
//! evaluated by direct quantifier enumeration, and supremal sublanguages are
//! computed as the union of all passing candidate sublanguages, enumerated
//! exhaustively. The only bridge to generators is [`enumerate`], a plain
//! breadth-bounded walk of the transition graph; all derived language
//! operations (projection, closure, synchronous composition) are redone at
//! the word level so the oracle does not share code with the operations it
//! validates.

use std::collections::BTreeSet;

use crate::error::DesError;
use crate::event::{Event, EventSet, EventTable, Subsystem};
use crate::exec;
use crate::generator::{Generator, LanguageKind};
use crate::witness::Witness;
use crate::words::{erase, prefix_close, project_words, Word, WordSet};

/// Exhaustive subset enumeration refuses specifications with more bounded
/// words than this.
pub const SUBSET_ENUMERATION_CAP: usize = 14;

/// A finite, length-bounded snapshot of one language of a generator.
#[derive(Debug, Clone)]
pub struct BoundedLanguage {
    pub words: WordSet,
    pub horizon: usize,
    pub kind: LanguageKind,
    /// True when no word of the generated language is longer than the
    /// horizon, i.e. the snapshot is the whole language.
    pub saturated: bool,
    /// State count of the source generator, for horizon sufficiency bounds.
    pub source_states: usize,
}

/// Exact bounded snapshot by depth-limited walk over the transition graph.
pub fn enumerate(g: &Generator, horizon: usize, kind: LanguageKind) -> BoundedLanguage {
    let mut words = WordSet::new();
    let mut saturated = true;
    // depth-first over words; the word count is bounded by |Σ|^horizon which
    // stays tiny at oracle scale
    let mut stack: Vec<(usize, Word)> = vec![(g.initial(), Word::new())];
    while let Some((q, w)) = stack.pop() {
        let keep = match kind {
            LanguageKind::Generated => true,
            LanguageKind::Marked => g.is_marked(q),
        };
        if keep {
            words.insert(w.clone());
        }
        if w.len() == horizon {
            if !g.transitions_from(q).is_empty() {
                saturated = false;
            }
            continue;
        }
        for (e, &n) in g.transitions_from(q) {
            let mut next = w.clone();
            next.push(e.clone());
            stack.push((n, next));
        }
    }
    BoundedLanguage {
        words,
        horizon,
        kind,
        saturated,
        source_states: g.state_count(),
    }
}

/// Word-level synchronous composition of two finite languages over their
/// respective alphabets: all interleavings agreeing on the shared events.
pub fn sync_words(w1: &WordSet, a1: &EventSet, w2: &WordSet, a2: &EventSet) -> WordSet {
    let mut out = WordSet::new();
    for x in w1 {
        for y in w2 {
            merge_into(x, a1, y, a2, &mut Word::new(), &mut out);
        }
    }
    out
}

fn merge_into(
    x: &[Event],
    a1: &EventSet,
    y: &[Event],
    a2: &EventSet,
    acc: &mut Word,
    out: &mut WordSet,
) {
    if x.is_empty() && y.is_empty() {
        out.insert(acc.clone());
        return;
    }
    if let Some(e) = x.first() {
        if a2.contains(e) {
            // shared head: must match on the other side
            if y.first() == Some(e) {
                acc.push(e.clone());
                merge_into(&x[1..], a1, &y[1..], a2, acc, out);
                acc.pop();
            }
        } else {
            acc.push(e.clone());
            merge_into(&x[1..], a1, y, a2, acc, out);
            acc.pop();
        }
    }
    if let Some(e) = y.first() {
        if !a1.contains(e) {
            acc.push(e.clone());
            merge_into(x, a1, &y[1..], a2, acc, out);
            acc.pop();
        }
        // shared events are handled from the x side only
    }
}

/// Verdict of an oracle evaluation: `exact` is set only when the inputs were
/// saturated snapshots or the horizon provably suffices; otherwise the
/// verdict is a bounded approximation and is labeled as such, never silently
/// exact.
#[derive(Debug, Clone)]
pub struct OracleVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub exact: bool,
}

/// Horizon sufficient for an exact verdict of an inclusion-style comparison:
/// one more than the product of the involved state counts (a longer
/// counterexample would repeat a product state).
pub fn required_horizon(state_counts: &[usize]) -> usize {
    state_counts
        .iter()
        .copied()
        .fold(1usize, |a, b| a.saturating_mul(b.max(1)))
        .saturating_add(1)
}

fn tag(holds: bool, witness: Option<Witness>, inputs: &[&BoundedLanguage]) -> OracleVerdict {
    let saturated = inputs.iter().all(|b| b.saturated);
    let states: Vec<usize> = inputs.iter().map(|b| b.source_states).collect();
    let required = required_horizon(&states);
    let sufficient = inputs.iter().all(|b| b.horizon >= required);
    OracleVerdict {
        holds,
        witness,
        exact: saturated || sufficient,
    }
}

/// The monolithic properties evaluated directly on bounded snapshots, with
/// exact/bounded labeling derived from saturation and horizon sufficiency.
pub fn oracle_check(
    property: crate::checks::CheckProperty,
    k: &BoundedLanguage,
    ambient: Option<&BoundedLanguage>,
    plant_generated: &BoundedLanguage,
    plant_marked: Option<&BoundedLanguage>,
    table: &EventTable,
) -> Result<OracleVerdict, DesError> {
    use crate::checks::CheckProperty as P;
    let alphabet = table.events();
    let verdict = match property {
        P::Controllable => {
            let (h, w) =
                controllable_words(&k.words, &plant_generated.words, &table.uncontrollable());
            tag(h, w, &[k, plant_generated])
        }
        P::Observable => {
            let (h, w) = observable_words(
                &k.words,
                &plant_generated.words,
                table.observable(),
                table.controllable(),
            );
            tag(h, w, &[k, plant_generated])
        }
        P::Normal => {
            let (h, w) = normal_words(&k.words, &plant_generated.words, table.observable());
            tag(h, w, &[k, plant_generated])
        }
        P::RelativelyObservable => {
            let c = ambient.ok_or_else(|| {
                DesError::invalid("relative observability needs an ambient snapshot")
            })?;
            let (h, w) = relatively_observable_words(
                &k.words,
                &c.words,
                &plant_generated.words,
                table.observable(),
                alphabet,
            );
            tag(h, w, &[k, c, plant_generated])
        }
        P::LmClosed => {
            let lm = plant_marked.ok_or_else(|| {
                DesError::invalid("closedness needs the marked plant snapshot")
            })?;
            let (h, w) = lm_closed_words(&k.words, &lm.words);
            tag(h, w, &[k, lm])
        }
        P::SupervisorExists => {
            let lm = plant_marked.ok_or_else(|| {
                DesError::invalid("supervisor existence needs the marked plant snapshot")
            })?;
            let (c, wc) =
                controllable_words(&k.words, &plant_generated.words, &table.uncontrollable());
            let (cl, wcl) = lm_closed_words(&k.words, &lm.words);
            let (o, wo) = observable_words(
                &k.words,
                &plant_generated.words,
                table.observable(),
                table.controllable(),
            );
            tag(c && cl && o, wc.or(wcl).or(wo), &[k, plant_generated, lm])
        }
        other => {
            return Err(DesError::invalid(format!(
                "`{other}` takes a coordination snapshot, not monolithic inputs"
            )))
        }
    };
    Ok(verdict)
}

fn sorted(words: &WordSet) -> Vec<&Word> {
    let mut v: Vec<&Word> = words.iter().collect();
    v.sort_by_key(|w| (w.len(), (*w).clone()));
    v
}

/// Controllability by direct enumeration: for every `s ∈ K̄` and
/// uncontrollable `u`, `su ∈ L` implies `su ∈ K̄`.
pub fn controllable_words(
    k_marked: &WordSet,
    plant: &WordSet,
    sigma_u: &EventSet,
) -> (bool, Option<Witness>) {
    let closure = prefix_close(k_marked);
    for s in sorted(&closure) {
        for u in sigma_u {
            let mut su = s.clone();
            su.push(u.clone());
            if plant.contains(&su) && !closure.contains(&su) {
                return (
                    false,
                    Some(Witness::pair(
                        s.clone(),
                        s.clone(),
                        u.clone(),
                        "uncontrollable continuation leaves the specification closure",
                    )),
                );
            }
        }
    }
    (true, None)
}

/// Relative observability by direct enumeration over all pairs (s, s') with
/// equal observations; plain observability is the `c = k` instance with the
/// quantifier restricted to `sigma_range`.
pub fn relatively_observable_words(
    k_marked: &WordSet,
    c_marked: &WordSet,
    plant: &WordSet,
    sigma_o: &EventSet,
    sigma_range: &EventSet,
) -> (bool, Option<Witness>) {
    let k_closure = prefix_close(k_marked);
    let c_closure = prefix_close(c_marked);
    for s in sorted(&k_closure) {
        for s_prime in sorted(&c_closure) {
            if erase(s, sigma_o) != erase(s_prime, sigma_o) {
                continue;
            }
            for sigma in sigma_range {
                let mut s_sigma = s.clone();
                s_sigma.push(sigma.clone());
                if !k_closure.contains(&s_sigma) {
                    continue;
                }
                let mut sp_sigma = s_prime.clone();
                sp_sigma.push(sigma.clone());
                if plant.contains(&sp_sigma) && !k_closure.contains(&sp_sigma) {
                    return (
                        false,
                        Some(Witness::pair(
                            s.clone(),
                            s_prime.clone(),
                            sigma.clone(),
                            "observation-equal pair disagrees on a continuation",
                        )),
                    );
                }
            }
        }
    }
    (true, None)
}

pub fn observable_words(
    k_marked: &WordSet,
    plant: &WordSet,
    sigma_o: &EventSet,
    sigma_range: &EventSet,
) -> (bool, Option<Witness>) {
    relatively_observable_words(k_marked, k_marked, plant, sigma_o, sigma_range)
}

/// Normality by direct enumeration: every plant word whose observation
/// matches some word of `K̄` must itself lie in `K̄`.
pub fn normal_words(
    k_marked: &WordSet,
    plant: &WordSet,
    sigma_o: &EventSet,
) -> (bool, Option<Witness>) {
    let closure = prefix_close(k_marked);
    let images: BTreeSet<Word> = closure.iter().map(|w| erase(w, sigma_o)).collect();
    for w in sorted(plant) {
        if images.contains(&erase(w, sigma_o)) && !closure.contains(w) {
            return (
                false,
                Some(Witness::word(
                    w.clone(),
                    "observation-equivalent plant word outside the specification closure",
                )),
            );
        }
    }
    (true, None)
}

/// Nonconflictingness of two marked languages over their alphabets.
pub fn nonconflicting_words(
    l1: &WordSet,
    a1: &EventSet,
    l2: &WordSet,
    a2: &EventSet,
) -> (bool, Option<Witness>) {
    let left = prefix_close(&sync_words(l1, a1, l2, a2));
    let right = sync_words(&prefix_close(l1), a1, &prefix_close(l2), a2);
    for w in sorted(&right) {
        if !left.contains(w) {
            return (
                false,
                Some(Witness::word(
                    w.clone(),
                    "word of both closures that extends to no marked word of the composition",
                )),
            );
        }
    }
    (true, None)
}

/// `Lm`-closedness: `K = K̄ ∩ Lm`.
pub fn lm_closed_words(k_marked: &WordSet, lm: &WordSet) -> (bool, Option<Witness>) {
    let closure = prefix_close(k_marked);
    for w in sorted(lm) {
        if closure.contains(w) && !k_marked.contains(w) {
            return (
                false,
                Some(Witness::word(
                    w.clone(),
                    "marked plant word inside the closure but outside the specification",
                )),
            );
        }
    }
    (true, None)
}

/// Word-level snapshot of a whole coordination problem.
#[derive(Debug, Clone)]
pub struct CoordinationSnapshot {
    pub table: EventTable,
    /// Marked specification words.
    pub spec: WordSet,
    pub g1_generated: WordSet,
    pub g1_marked: WordSet,
    pub g2_generated: WordSet,
    pub g2_marked: WordSet,
    pub gk_generated: WordSet,
    pub gk_marked: WordSet,
    pub horizon: usize,
    pub saturated: bool,
}

impl CoordinationSnapshot {
    /// Captures bounded word sets for every language of a problem.
    pub fn capture(p: &crate::coordination::CoordinationProblem, horizon: usize) -> Self {
        let spec = enumerate(p.spec(), horizon, LanguageKind::Marked);
        let g1_l = enumerate(p.g1(), horizon, LanguageKind::Generated);
        let g1_m = enumerate(p.g1(), horizon, LanguageKind::Marked);
        let g2_l = enumerate(p.g2(), horizon, LanguageKind::Generated);
        let g2_m = enumerate(p.g2(), horizon, LanguageKind::Marked);
        let gk_l = enumerate(p.gk(), horizon, LanguageKind::Generated);
        let gk_m = enumerate(p.gk(), horizon, LanguageKind::Marked);
        let saturated = spec.saturated
            && g1_l.saturated
            && g2_l.saturated
            && gk_l.saturated;
        CoordinationSnapshot {
            table: p.table().clone(),
            spec: spec.words,
            g1_generated: g1_l.words,
            g1_marked: g1_m.words,
            g2_generated: g2_l.words,
            g2_marked: g2_m.words,
            gk_generated: gk_l.words,
            gk_marked: gk_m.words,
            horizon,
            saturated,
        }
    }

    pub fn subsystem(&self, i: Subsystem) -> (&WordSet, &WordSet, &EventSet) {
        match i {
            Subsystem::One => (&self.g1_generated, &self.g1_marked, self.table.alphabet1()),
            Subsystem::Two => (&self.g2_generated, &self.g2_marked, self.table.alphabet2()),
        }
    }

    /// Projection of a word set onto Σi ∪ Σk.
    pub fn project_ik(&self, words: &WordSet, i: Subsystem) -> WordSet {
        project_words(words, &self.table.alphabet_ik(i))
    }

    /// Projection onto Σk.
    pub fn project_k(&self, words: &WordSet) -> WordSet {
        project_words(words, self.table.alphabet_k())
    }

    /// Component plant `L(Gi) ∥ closure(Pk(candidate))`.
    fn component_plant(&self, candidate: &WordSet, i: Subsystem) -> WordSet {
        let (gi_l, _, ai) = self.subsystem(i);
        let pk_closure = prefix_close(&self.project_k(candidate));
        sync_words(gi_l, ai, &pk_closure, self.table.alphabet_k())
    }

    /// Component plant of the strong variant, `L(Gi) ∥ L(Gk)`.
    fn component_plant_strong(&self, i: Subsystem) -> WordSet {
        let (gi_l, _, ai) = self.subsystem(i);
        sync_words(gi_l, ai, &self.gk_generated, self.table.alphabet_k())
    }

    fn sigma_o_of(&self, alphabet: &EventSet) -> EventSet {
        self.table.observable_of(alphabet)
    }
}

/// Conditional controllability of a candidate sublanguage, by clauses:
/// `Pk(K)` controllable w.r.t. `L(Gk)` and Σk,u; `Pi+k(K)` controllable
/// w.r.t. `L(Gi) ∥ closure(Pk(K))` and Σi+k,u.
pub fn conditionally_controllable_words(
    snap: &CoordinationSnapshot,
    candidate: &WordSet,
) -> (bool, Option<Witness>) {
    let pk = snap.project_k(candidate);
    let sigma_ku = snap.table.uncontrollable_of(snap.table.alphabet_k());
    let (ok, w) = controllable_words(&pk, &snap.gk_generated, &sigma_ku);
    if !ok {
        return (false, w);
    }
    for i in Subsystem::BOTH {
        let pik = snap.project_ik(candidate, i);
        let plant = snap.component_plant(candidate, i);
        let sigma_iku = snap.table.uncontrollable_of(&snap.table.alphabet_ik(i));
        let (ok, w) = controllable_words(&pik, &plant, &sigma_iku);
        if !ok {
            return (false, w);
        }
    }
    (true, None)
}

/// Conditional observability of a candidate (σ quantified over the
/// controllable part of each component alphabet).
pub fn conditionally_observable_words(
    snap: &CoordinationSnapshot,
    candidate: &WordSet,
) -> (bool, Option<Witness>) {
    let pk = snap.project_k(candidate);
    let ak = snap.table.alphabet_k();
    let (ok, w) = observable_words(
        &pk,
        &snap.gk_generated,
        &snap.sigma_o_of(ak),
        &snap.table.controllable_of(ak),
    );
    if !ok {
        return (false, w);
    }
    for i in Subsystem::BOTH {
        let aik = snap.table.alphabet_ik(i);
        let pik = snap.project_ik(candidate, i);
        let plant = snap.component_plant(candidate, i);
        let (ok, w) = observable_words(
            &pik,
            &plant,
            &snap.sigma_o_of(&aik),
            &snap.table.controllable_of(&aik),
        );
        if !ok {
            return (false, w);
        }
    }
    (true, None)
}

/// Conditional closedness of a candidate.
pub fn conditionally_closed_words(
    snap: &CoordinationSnapshot,
    candidate: &WordSet,
) -> (bool, Option<Witness>) {
    let pk = snap.project_k(candidate);
    let (ok, w) = lm_closed_words(&pk, &snap.gk_marked);
    if !ok {
        return (false, w);
    }
    for i in Subsystem::BOTH {
        let (_, gi_m, ai) = snap.subsystem(i);
        let pik = snap.project_ik(candidate, i);
        let m = sync_words(gi_m, ai, &pk, snap.table.alphabet_k());
        let (ok, w) = lm_closed_words(&pik, &m);
        if !ok {
            return (false, w);
        }
    }
    (true, None)
}

/// Conditional normality of a candidate.
pub fn conditionally_normal_words(
    snap: &CoordinationSnapshot,
    candidate: &WordSet,
) -> (bool, Option<Witness>) {
    let pk = snap.project_k(candidate);
    let ak = snap.table.alphabet_k();
    let (ok, w) = normal_words(&pk, &snap.gk_generated, &snap.sigma_o_of(ak));
    if !ok {
        return (false, w);
    }
    for i in Subsystem::BOTH {
        let aik = snap.table.alphabet_ik(i);
        let pik = snap.project_ik(candidate, i);
        let plant = snap.component_plant(candidate, i);
        let (ok, w) = normal_words(&pik, &plant, &snap.sigma_o_of(&aik));
        if !ok {
            return (false, w);
        }
    }
    (true, None)
}

/// Conditional relative observability of a candidate w.r.t. a fixed ambient.
pub fn conditionally_c_observable_words(
    snap: &CoordinationSnapshot,
    candidate: &WordSet,
    ambient: &WordSet,
) -> (bool, Option<Witness>) {
    conditional_relative_observability(snap, candidate, ambient, false)
}

/// The strong variant: the component plant is `L(Gi) ∥ L(Gk)`.
pub fn conditionally_strong_c_observable_words(
    snap: &CoordinationSnapshot,
    candidate: &WordSet,
    ambient: &WordSet,
) -> (bool, Option<Witness>) {
    conditional_relative_observability(snap, candidate, ambient, true)
}

fn conditional_relative_observability(
    snap: &CoordinationSnapshot,
    candidate: &WordSet,
    ambient: &WordSet,
    strong: bool,
) -> (bool, Option<Witness>) {
    let pk = snap.project_k(candidate);
    let pk_c = snap.project_k(ambient);
    let ak = snap.table.alphabet_k();
    let (ok, w) = relatively_observable_words(
        &pk,
        &pk_c,
        &snap.gk_generated,
        &snap.sigma_o_of(ak),
        ak,
    );
    if !ok {
        return (false, w);
    }
    for i in Subsystem::BOTH {
        let aik = snap.table.alphabet_ik(i);
        let pik = snap.project_ik(candidate, i);
        let pik_c = snap.project_ik(ambient, i);
        let plant = if strong {
            snap.component_plant_strong(i)
        } else {
            snap.component_plant(candidate, i)
        };
        let (ok, w) = relatively_observable_words(
            &pik,
            &pik_c,
            &plant,
            &snap.sigma_o_of(&aik),
            &aik,
        );
        if !ok {
            return (false, w);
        }
    }
    (true, None)
}

/// Exhaustive union of all passing sublanguage candidates of a bounded
/// specification. Returns the union and whether the union itself passes
/// (for a union-closed family the two coincide; the weak conditional
/// relative-observability family is the counterexample that does not).
///
/// Sequentially, candidates are visited largest-first and candidates already
/// inside the accumulated union are skipped; in parallel all candidates are
/// tested independently. Both orders yield the same union.
pub fn union_of_passers<F>(
    spec: &WordSet,
    parallel: bool,
    passes: F,
) -> Result<(WordSet, bool), DesError>
where
    F: Fn(&WordSet) -> bool + Sync + Send,
{
    let words: Vec<Word> = spec.iter().cloned().collect();
    if words.len() > SUBSET_ENUMERATION_CAP {
        return Err(DesError::OracleCapExceeded {
            words: words.len(),
            cap: SUBSET_ENUMERATION_CAP,
        });
    }
    let n = words.len();
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let candidate = |mask: u32| -> WordSet {
        words
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| w.clone())
            .collect()
    };

    let mut union = WordSet::new();
    if parallel {
        // chunked accumulation: within a chunk candidates are tested in
        // parallel, between chunks the union absorbs the passers and later
        // candidates already inside it are dropped
        for chunk in masks.chunks(512) {
            let union_ref = &union;
            let passing: Vec<Option<WordSet>> =
                exec::map_collect(chunk.to_vec(), true, |mask| {
                    let c = candidate(mask);
                    if c.is_subset(union_ref) || !passes(&c) {
                        None
                    } else {
                        Some(c)
                    }
                });
            for c in passing.into_iter().flatten() {
                union.extend(c);
            }
        }
    } else {
        for mask in masks {
            let c = candidate(mask);
            if c.is_subset(&union) {
                continue;
            }
            if passes(&c) {
                union.extend(c);
            }
        }
    }
    let union_passes = passes(&union);
    Ok((union, union_passes))
}

/// Supremal controllable sublanguage by union of passers.
pub fn supremal_controllable_words(
    k_marked: &WordSet,
    plant: &WordSet,
    sigma_u: &EventSet,
    parallel: bool,
) -> Result<WordSet, DesError> {
    let (union, passes) = union_of_passers(k_marked, parallel, |c| {
        controllable_words(c, plant, sigma_u).0
    })?;
    debug_assert!(passes, "controllability is closed under unions");
    Ok(union)
}

/// Supremal `C`-observable sublanguage (fixed ambient) by union of passers.
pub fn supremal_c_observable_words(
    k_marked: &WordSet,
    c_marked: &WordSet,
    plant: &WordSet,
    sigma_o: &EventSet,
    alphabet: &EventSet,
    parallel: bool,
) -> Result<WordSet, DesError> {
    let (union, passes) = union_of_passers(k_marked, parallel, |c| {
        relatively_observable_words(c, c_marked, plant, sigma_o, alphabet).0
    })?;
    debug_assert!(passes, "relative observability with a fixed ambient is closed under unions");
    Ok(union)
}

/// Supremal controllable and `(K ∩ L)`-observable sublanguage by union of
/// passers; the ambient is pinned to `K ∩ L` of the original inputs.
pub fn supremal_c_and_ro_words(
    k_marked: &WordSet,
    plant: &WordSet,
    sigma_u: &EventSet,
    sigma_o: &EventSet,
    alphabet: &EventSet,
    parallel: bool,
) -> Result<WordSet, DesError> {
    let ambient: WordSet = k_marked.intersection(plant).cloned().collect();
    let (union, passes) = union_of_passers(&ambient, parallel, |c| {
        controllable_words(c, plant, sigma_u).0
            && relatively_observable_words(c, &ambient, plant, sigma_o, alphabet).0
    })?;
    debug_assert!(passes);
    Ok(union)
}

/// Supremal conditionally controllable sublanguage by union of passers.
pub fn supremal_conditionally_controllable_words(
    snap: &CoordinationSnapshot,
    parallel: bool,
) -> Result<WordSet, DesError> {
    let (union, passes) = union_of_passers(&snap.spec, parallel, |c| {
        conditionally_controllable_words(snap, c).0
    })?;
    debug_assert!(passes, "conditional controllability is closed under unions");
    Ok(union)
}

/// Supremal conditionally controllable and conditionally strong
/// `K`-observable sublanguage (ambient pinned to the original specification).
pub fn supremal_conditionally_controllable_strong_k_observable_words(
    snap: &CoordinationSnapshot,
    parallel: bool,
) -> Result<WordSet, DesError> {
    let ambient = snap.spec.clone();
    let (union, passes) = union_of_passers(&snap.spec, parallel, |c| {
        conditionally_controllable_words(snap, c).0
            && conditionally_strong_c_observable_words(snap, c, &ambient).0
    })?;
    debug_assert!(passes);
    Ok(union)
}

/// The families accepted by [`union_of_passers`]-based supremal computation.
/// Every listed family is closed under unions; the weak conditional
/// relative-observability family is deliberately absent (its union of
/// passers may fail membership).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupremalFamily {
    Controllable,
    CObservable,
    ControllableAndRelativelyObservable,
    ConditionallyControllable,
    ConditionallyControllableStrongKObservable,
}

impl SupremalFamily {
    pub fn is_union_closed(&self) -> bool {
        true
    }

    pub fn name(&self) -> &'static str {
        match self {
            SupremalFamily::Controllable => "sup-controllable",
            SupremalFamily::CObservable => "sup-relatively-observable",
            SupremalFamily::ControllableAndRelativelyObservable => "sup-controllable-observable",
            SupremalFamily::ConditionallyControllable => "sup-conditionally-controllable",
            SupremalFamily::ConditionallyControllableStrongKObservable => {
                "sup-conditionally-controllable-strong-observable"
            }
        }
    }
}

impl std::str::FromStr for SupremalFamily {
    type Err = DesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            SupremalFamily::Controllable,
            SupremalFamily::CObservable,
            SupremalFamily::ControllableAndRelativelyObservable,
            SupremalFamily::ConditionallyControllable,
            SupremalFamily::ConditionallyControllableStrongKObservable,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| DesError::invalid(format!("unknown supremal family `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::event_set;
    use crate::words::word_set;

    fn gen(alphabet: &[&str], words: &[&str]) -> Generator {
        Generator::from_words(event_set(alphabet.iter().copied()), &word_set(words.iter().copied()))
            .unwrap()
    }

    fn closed(alphabet: &[&str], words: &[&str]) -> Generator {
        gen(alphabet, words).prefix_closure()
    }

    #[test]
    fn enumerate_examples() {
        let g = closed(&["a", "tau"], &["a", "tau.a"]);
        let b = enumerate(&g, 2, LanguageKind::Marked);
        assert_eq!(b.words, word_set(["", "a", "tau", "tau.a"]));
        assert!(b.saturated);

        let empty = Generator::empty_language(event_set(["a"]));
        assert!(enumerate(&empty, 3, LanguageKind::Marked).words.is_empty());
        assert_eq!(
            enumerate(&empty, 3, LanguageKind::Generated).words,
            word_set([""])
        );

        // horizon 0 keeps ε iff accepted
        let e = Generator::epsilon_language(event_set(["a"]));
        assert_eq!(enumerate(&e, 0, LanguageKind::Marked).words, word_set([""]));

        let looping = Generator::universal(event_set(["a"]));
        assert!(!enumerate(&looping, 2, LanguageKind::Marked).saturated);
    }

    #[test]
    fn sync_words_matches_the_interleaving_definition() {
        let w1 = word_set(["a.u"]);
        let w2 = word_set(["u.b"]);
        let out = sync_words(
            &w1,
            &event_set(["a", "u"]),
            &w2,
            &event_set(["b", "u"]),
        );
        assert_eq!(out, word_set(["a.u.b"]));

        // disjoint alphabets shuffle freely
        let out2 = sync_words(
            &word_set(["a"]),
            &event_set(["a"]),
            &word_set(["b"]),
            &event_set(["b"]),
        );
        assert_eq!(out2, word_set(["a.b", "b.a"]));

        // mismatched shared skeletons compose to nothing
        let out3 = sync_words(
            &word_set(["u.v"]),
            &event_set(["u", "v"]),
            &word_set(["v.u"]),
            &event_set(["u", "v"]),
        );
        assert!(out3.is_empty());
    }

    #[test]
    fn controllable_words_without_uncontrollable_events_is_vacuous() {
        let k = word_set(["a"]);
        let l = prefix_close(&word_set(["a", "tau.a"]));
        assert!(controllable_words(&k, &l, &EventSet::new()).0);
    }

    #[test]
    fn supremal_controllable_by_enumeration() {
        // supC({a}, closure{a,τa}, {τ}) = ∅: both candidate sublanguages fail
        let k = word_set(["a"]);
        let l = prefix_close(&word_set(["a", "tau.a"]));
        let sup = supremal_controllable_words(&k, &l, &event_set(["tau"]), false).unwrap();
        assert!(sup.is_empty());

        // Σu = ∅ keeps the specification
        let sup2 = supremal_controllable_words(&k, &l, &EventSet::new(), false).unwrap();
        assert_eq!(sup2, k);
    }

    #[test]
    fn parallel_and_sequential_union_of_passers_agree() {
        let k = word_set(["a", "tau", "a.tau", "tau.a"]);
        let l = prefix_close(&word_set(["a.tau", "tau.a", "a", "tau"]));
        let su = event_set(["tau"]);
        let seq = supremal_controllable_words(&k, &l, &su, false).unwrap();
        let par = supremal_controllable_words(&k, &l, &su, true).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let words: WordSet = (0..20)
            .map(|i| vec![Event::new(format!("e{i}"))])
            .collect();
        let err = union_of_passers(&words, false, |_| true);
        assert!(matches!(err, Err(DesError::OracleCapExceeded { .. })));
    }

    #[test]
    fn union_of_passers_passes_for_union_closed_families() {
        let k = word_set(["a", "tau", "a.tau"]);
        let l = prefix_close(&word_set(["a.tau", "tau.a", "a", "tau"]));
        let su = event_set(["tau"]);
        let (_, union_passes) =
            union_of_passers(&k, false, |c| controllable_words(c, &l, &su).0).unwrap();
        assert!(union_passes);
    }

    /// The weak conditional relative-observability family is not closed
    /// under unions: on the demo instance, both singleton components pass
    /// but their union (which is the union of passers) does not.
    #[test]
    fn weak_conditional_family_union_of_passers_fails_membership() {
        let demo = crate::fixtures::partial_observation_demo();
        let snap = CoordinationSnapshot::capture(&demo.problem, 6);
        let ambient = snap.spec.clone();
        let (union, union_passes) = union_of_passers(&snap.spec, false, |c| {
            conditionally_c_observable_words(&snap, c, &ambient).0
        })
        .unwrap();
        assert_eq!(union, word_set(["a", "tau"]));
        assert!(!union_passes);

        // the strong variant is union-closed and its union is {tau}
        let (union, union_passes) = union_of_passers(&snap.spec, false, |c| {
            conditionally_strong_c_observable_words(&snap, c, &ambient).0
        })
        .unwrap();
        assert_eq!(union, word_set(["tau"]));
        assert!(union_passes);
    }

    #[test]
    fn oracle_check_tags_saturated_snapshots_exact() {
        let demo = crate::fixtures::partial_observation_demo();
        let table = demo.problem.table().clone();
        let plant = demo.problem.plant();
        let k = enumerate(demo.problem.spec(), 6, LanguageKind::Marked);
        let lw = enumerate(plant, 6, LanguageKind::Generated);
        let lm = enumerate(plant, 6, LanguageKind::Marked);
        let v = oracle_check(
            crate::checks::CheckProperty::Controllable,
            &k,
            None,
            &lw,
            Some(&lm),
            &table,
        )
        .unwrap();
        assert!(v.holds);
        assert!(v.exact);

        // an unsaturated snapshot of a looping generator below its
        // sufficiency bound is labeled bounded
        let ring = {
            let a = Event::new("a");
            let t = vec![
                [(a.clone(), 1)].into_iter().collect(),
                [(a.clone(), 2)].into_iter().collect(),
                [(a.clone(), 0)].into_iter().collect(),
            ];
            Generator::new(event_set(["a"]), t, 0, [0, 1, 2].into_iter().collect()).unwrap()
        };
        let short = enumerate(&ring, 2, LanguageKind::Marked);
        let short_l = enumerate(&ring, 2, LanguageKind::Generated);
        let t = crate::event::EventTable::new(event_set(["a"]), EventSet::new(), EventSet::new())
            .unwrap();
        let v = oracle_check(
            crate::checks::CheckProperty::Controllable,
            &short,
            None,
            &short_l,
            None,
            &t,
        )
        .unwrap();
        assert!(!v.exact);
    }
}

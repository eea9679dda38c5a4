//! Generators: deterministic finite automata with a partial transition
//! function, an initial state and a set of marked states.
//!
//! A generator `G` carries two languages. The generated language `L(G)` is the
//! set of words on which the transition function is defined from the initial
//! state; it is prefix-closed by construction. The marked language `Lm(G)` is
//! the subset of `L(G)` ending in a marked state. Every language-level notion
//! in this crate is expressed through these two sets.
//!
//! All constructions renumber states densely in breadth-first order from the
//! initial state, with events taken in sorted order, so equal inputs always
//! produce byte-identical serializations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::DesError;
use crate::event::{Event, EventSet};
use crate::words::Word;

/// Which of the two languages of a generator an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LanguageKind {
    Generated,
    Marked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    alphabet: EventSet,
    /// One map per state; absent key = undefined transition.
    transitions: Vec<BTreeMap<Event, usize>>,
    initial: usize,
    marked: BTreeSet<usize>,
}

impl Generator {
    /// Validated constructor. States are `0..transitions.len()`.
    pub fn new(
        alphabet: EventSet,
        transitions: Vec<BTreeMap<Event, usize>>,
        initial: usize,
        marked: BTreeSet<usize>,
    ) -> Result<Self, DesError> {
        let n = transitions.len();
        if n == 0 {
            return Err(DesError::invalid("a generator needs at least one state"));
        }
        if initial >= n {
            return Err(DesError::invalid(format!(
                "initial state {initial} out of range (states: {n})"
            )));
        }
        if let Some(&q) = marked.iter().find(|&&q| q >= n) {
            return Err(DesError::invalid(format!(
                "marked state {q} out of range (states: {n})"
            )));
        }
        for (src, row) in transitions.iter().enumerate() {
            for (e, &dst) in row {
                if !alphabet.contains(e) {
                    return Err(DesError::invalid(format!(
                        "transition {src} -{e}-> {dst} uses event {e} outside the alphabet"
                    )));
                }
                if dst >= n {
                    return Err(DesError::invalid(format!(
                        "transition {src} -{e}-> {dst} targets a state out of range (states: {n})"
                    )));
                }
            }
        }
        Ok(Generator {
            alphabet,
            transitions,
            initial,
            marked,
        })
    }

    /// The canonical empty-marked-language generator: one unmarked state, no
    /// transitions. Note `L = {ε}` still holds; only `Lm` is empty.
    pub fn empty_language(alphabet: EventSet) -> Self {
        Generator {
            alphabet,
            transitions: vec![BTreeMap::new()],
            initial: 0,
            marked: BTreeSet::new(),
        }
    }

    /// Recognizes exactly `{ε}` as marked language.
    pub fn epsilon_language(alphabet: EventSet) -> Self {
        Generator {
            alphabet,
            transitions: vec![BTreeMap::new()],
            initial: 0,
            marked: [0].into_iter().collect(),
        }
    }

    /// Recognizes Σ* both as generated and marked language.
    pub fn universal(alphabet: EventSet) -> Self {
        let row: BTreeMap<Event, usize> = alphabet.iter().map(|e| (e.clone(), 0)).collect();
        Generator {
            alphabet,
            transitions: vec![row],
            initial: 0,
            marked: [0].into_iter().collect(),
        }
    }

    /// Trie acceptor for a finite set of marked words.
    pub fn from_words<'a, I>(alphabet: EventSet, words: I) -> Result<Self, DesError>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut transitions: Vec<BTreeMap<Event, usize>> = vec![BTreeMap::new()];
        let mut marked = BTreeSet::new();
        for w in words {
            let mut state = 0usize;
            for e in w {
                if !alphabet.contains(e) {
                    return Err(DesError::invalid(format!(
                        "word event {e} outside the alphabet"
                    )));
                }
                state = match transitions[state].get(e) {
                    Some(&next) => next,
                    None => {
                        let next = transitions.len();
                        transitions.push(BTreeMap::new());
                        transitions[state].insert(e.clone(), next);
                        next
                    }
                };
            }
            marked.insert(state);
        }
        Ok(Generator {
            alphabet,
            transitions,
            initial: 0,
            marked,
        }
        .canonicalize())
    }

    pub fn alphabet(&self) -> &EventSet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    pub fn is_marked(&self, state: usize) -> bool {
        self.marked.contains(&state)
    }

    pub fn transitions_from(&self, state: usize) -> &BTreeMap<Event, usize> {
        &self.transitions[state]
    }

    /// Iterates `(src, event, dst)` in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Event, usize)> + '_ {
        self.transitions
            .iter()
            .enumerate()
            .flat_map(|(src, row)| row.iter().map(move |(e, &dst)| (src, e, dst)))
    }

    pub fn step(&self, state: usize, event: &Event) -> Option<usize> {
        self.transitions[state].get(event).copied()
    }

    /// Runs a word from the initial state; `None` when undefined.
    pub fn state_after(&self, word: &[Event]) -> Option<usize> {
        let mut q = self.initial;
        for e in word {
            q = self.step(q, e)?;
        }
        Some(q)
    }

    pub fn accepts(&self, word: &[Event], kind: LanguageKind) -> bool {
        match (self.state_after(word), kind) {
            (Some(_), LanguageKind::Generated) => true,
            (Some(q), LanguageKind::Marked) => self.is_marked(q),
            (None, _) => false,
        }
    }

    /// True when `Lm(G) = ∅`, i.e. no marked state is reachable.
    pub fn is_empty_marked(&self) -> bool {
        !self
            .reachable_states()
            .iter()
            .any(|&q| self.marked.contains(&q))
    }

    fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &dst in self.transitions[q].values() {
                if !seen[dst] {
                    seen[dst] = true;
                    queue.push_back(dst);
                }
            }
        }
        order
    }

    /// Densely renumbers the reachable part in BFS order. Both languages are
    /// preserved; unreachable states are dropped.
    pub fn canonicalize(&self) -> Generator {
        let order = self.reachable_states();
        let mut rename = vec![usize::MAX; self.state_count()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        let transitions = order
            .iter()
            .map(|&old| {
                self.transitions[old]
                    .iter()
                    .map(|(e, &dst)| (e.clone(), rename[dst]))
                    .collect()
            })
            .collect();
        let marked = self
            .marked
            .iter()
            .filter(|&&q| rename[q] != usize::MAX)
            .map(|&q| rename[q])
            .collect();
        Generator {
            alphabet: self.alphabet.clone(),
            transitions,
            initial: 0,
            marked,
        }
    }

    /// Accessible part: drops unreachable states, preserving `L` and `Lm`.
    pub fn accessible(&self) -> Generator {
        self.canonicalize()
    }

    /// Trim: keeps states that are reachable and co-reachable to a marked
    /// state. `Lm` is preserved and `L(trim(G)) = closure(Lm(G))`. An empty
    /// marked language yields the canonical empty generator.
    pub fn trim(&self) -> Generator {
        let g = self.canonicalize();
        let n = g.state_count();
        // backward closure from marked states
        let mut coreach = vec![false; n];
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (src, _, dst) in g.transitions() {
            rev[dst].push(src);
        }
        let mut queue: VecDeque<usize> = g.marked.iter().copied().collect();
        for &q in &g.marked {
            coreach[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if !coreach[p] {
                    coreach[p] = true;
                    queue.push_back(p);
                }
            }
        }
        if !coreach[g.initial] {
            return Generator::empty_language(g.alphabet);
        }
        let mut rename = vec![usize::MAX; n];
        let mut kept = Vec::new();
        for q in 0..n {
            if coreach[q] {
                rename[q] = kept.len();
                kept.push(q);
            }
        }
        let transitions = kept
            .iter()
            .map(|&old| {
                g.transitions[old]
                    .iter()
                    .filter(|(_, &dst)| coreach[dst])
                    .map(|(e, &dst)| (e.clone(), rename[dst]))
                    .collect()
            })
            .collect();
        let marked = g.marked.iter().map(|&q| rename[q]).collect();
        Generator {
            alphabet: g.alphabet,
            transitions,
            initial: rename[g.initial],
            marked,
        }
        .canonicalize()
    }

    /// Prefix closure: `Lm(result) = closure(Lm(G)) = L(result)`.
    ///
    /// Implemented by trimming and marking every remaining state; the empty
    /// marked language stays empty (closure(∅) = ∅).
    pub fn prefix_closure(&self) -> Generator {
        let t = self.trim();
        if t.is_empty_marked() {
            return Generator::empty_language(t.alphabet);
        }
        let marked = (0..t.state_count()).collect();
        Generator { marked, ..t }
    }

    /// True when `Lm(G)` is prefix-closed (every trim state marked).
    pub fn is_prefix_closed(&self) -> bool {
        let t = self.trim();
        t.is_empty_marked() || t.marked.len() == t.state_count()
    }

    /// Widens the alphabet; the added events occur in no transition, so both
    /// languages are unchanged (the generator blocks them in a composition).
    pub fn extend_alphabet(&self, superset: &EventSet) -> Result<Generator, DesError> {
        if !self.alphabet.is_subset(superset) {
            let stray: Vec<Event> = self.alphabet.difference(superset).cloned().collect();
            return Err(DesError::invalid(format!(
                "cannot shrink an alphabet: events {stray:?} are in use"
            )));
        }
        Ok(Generator {
            alphabet: superset.clone(),
            ..self.clone()
        })
    }

    /// Completes the transition function with a fresh sink state. Returns the
    /// completed generator and the sink index. The sink is unmarked.
    pub(crate) fn complete_with_sink(&self) -> (Generator, usize) {
        let sink = self.state_count();
        let mut transitions = self.transitions.clone();
        transitions.push(BTreeMap::new());
        for row in &mut transitions {
            for e in &self.alphabet {
                row.entry(e.clone()).or_insert(sink);
            }
        }
        (
            Generator {
                alphabet: self.alphabet.clone(),
                transitions,
                initial: self.initial,
                marked: self.marked.clone(),
            },
            sink,
        )
    }
}

//! Words and finite word sets.
//!
//! These are the oracle's world-view: finite, length-bounded snapshots of
//! languages. Generators stay the primary language representation everywhere
//! else.

use std::collections::BTreeSet;

use crate::event::{Event, EventSet};

/// A word is a finite sequence of events.
pub type Word = Vec<Event>;

/// A deterministically ordered finite set of words.
pub type WordSet = BTreeSet<Word>;

pub fn fmt_word(word: &[Event]) -> String {
    if word.is_empty() {
        "ε".to_string()
    } else {
        word.iter()
            .map(Event::name)
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Builds a word from whitespace-free event names.
pub fn word<I, S>(items: I) -> Word
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    items.into_iter().map(Event::new).collect()
}

/// Builds a word set from dot-separated names, `""` standing for ε.
pub fn word_set<I, S>(items: I) -> WordSet
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    items
        .into_iter()
        .map(|w| {
            let w = w.as_ref();
            if w.is_empty() {
                Word::new()
            } else {
                w.split('.').map(Event::new).collect()
            }
        })
        .collect()
}

/// Erases the events outside `keep` (natural projection on a single word).
pub fn erase(word: &[Event], keep: &EventSet) -> Word {
    word.iter().filter(|e| keep.contains(*e)).cloned().collect()
}

/// Natural projection of a word set.
pub fn project_words(words: &WordSet, keep: &EventSet) -> WordSet {
    words.iter().map(|w| erase(w, keep)).collect()
}

/// All prefixes of every word, ε included.
pub fn prefix_close(words: &WordSet) -> WordSet {
    let mut out = WordSet::new();
    for w in words {
        for len in 0..=w.len() {
            out.insert(w[..len].to_vec());
        }
    }
    out
}

/// True when every event of every word belongs to `alphabet`.
pub fn words_within(words: &WordSet, alphabet: &EventSet) -> bool {
    words
        .iter()
        .all(|w| w.iter().all(|e| alphabet.contains(e)))
}

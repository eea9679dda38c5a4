//! Counterexample carriers for failed checks.

use serde::Serialize;

use crate::event::Event;
use crate::words::{fmt_word, Word};

/// A counterexample falsifying a property.
///
/// A `Word` witness is a single word in a set difference. A `Pair` witness is
/// the triple (s, s', σ) of an observability-style violation: s and s' have
/// equal observations, sσ stays inside the specification closure while s'σ
/// escapes it although the plant allows it. Replaying a witness against the
/// inputs that produced it must reconfirm the violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Word { word: Word, note: String },
    Pair {
        s: Word,
        s_prime: Word,
        sigma: Event,
        note: String,
    },
}

impl Witness {
    pub fn word(word: Word, note: impl Into<String>) -> Self {
        Witness::Word {
            word,
            note: note.into(),
        }
    }

    pub fn pair(s: Word, s_prime: Word, sigma: Event, note: impl Into<String>) -> Self {
        Witness::Pair {
            s,
            s_prime,
            sigma,
            note: note.into(),
        }
    }

    pub fn note(&self) -> &str {
        match self {
            Witness::Word { note, .. } | Witness::Pair { note, .. } => note,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Witness::Word { word, note } => format!("{} ({note})", fmt_word(word)),
            Witness::Pair {
                s,
                s_prime,
                sigma,
                note,
            } => format!(
                "(s={}, s'={}, sigma={sigma}) ({note})",
                fmt_word(s),
                fmt_word(s_prime)
            ),
        }
    }
}

/// Outcome of a single boolean check: the verdict plus, when it fails, a
/// witness that replays to a confirmed violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl PropertyVerdict {
    pub fn pass() -> Self {
        PropertyVerdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        PropertyVerdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

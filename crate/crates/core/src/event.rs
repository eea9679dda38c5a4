//! Events and the global event table.
//!
//! An [`Event`] is an interned name. The [`EventTable`] is the universe every
//! generator of a problem refers to: it fixes which events are controllable,
//! which are observable, and how the universe splits into the two subsystem
//! alphabets and the coordinator alphabet. Uncontrollable and unobservable
//! sets are always derived, never stored.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::DesError;

/// A single event of a discrete-event system. Cheap to clone, ordered by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event(Arc<str>);

impl Event {
    pub fn new(name: impl AsRef<str>) -> Self {
        Event(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Event {
    fn from(s: &str) -> Self {
        Event::new(s)
    }
}

impl Serialize for Event {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

/// Ordered event set; the ordering keeps every construction reproducible.
pub type EventSet = BTreeSet<Event>;

/// Builds an [`EventSet`] from anything yielding string-like items.
pub fn event_set<I, S>(items: I) -> EventSet
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    items.into_iter().map(Event::new).collect()
}

/// The global event universe with per-event attributes.
///
/// Invariants enforced at construction: `controllable ⊆ events`,
/// `observable ⊆ events`, and each decomposition alphabet is a subset of
/// `events`. Coordination-specific invariants (the two subsystem alphabets
/// cover the universe and the coordinator alphabet sits between their
/// intersection and their union) are checked by [`EventTable::validate_coordination`],
/// so the table can also serve purely monolithic checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventTable {
    events: EventSet,
    controllable: EventSet,
    observable: EventSet,
    alphabet1: EventSet,
    alphabet2: EventSet,
    alphabet_k: EventSet,
}

impl EventTable {
    pub fn new(
        events: EventSet,
        controllable: EventSet,
        observable: EventSet,
    ) -> Result<Self, DesError> {
        let table = EventTable {
            events,
            controllable,
            observable,
            alphabet1: EventSet::new(),
            alphabet2: EventSet::new(),
            alphabet_k: EventSet::new(),
        };
        table.check_subset(&table.controllable, "controllable")?;
        table.check_subset(&table.observable, "observable")?;
        Ok(table)
    }

    /// Attaches the Σ1/Σ2/Σk decomposition.
    pub fn with_decomposition(
        mut self,
        alphabet1: EventSet,
        alphabet2: EventSet,
        alphabet_k: EventSet,
    ) -> Result<Self, DesError> {
        self.check_subset(&alphabet1, "sigma1")?;
        self.check_subset(&alphabet2, "sigma2")?;
        self.check_subset(&alphabet_k, "sigmak")?;
        self.alphabet1 = alphabet1;
        self.alphabet2 = alphabet2;
        self.alphabet_k = alphabet_k;
        Ok(self)
    }

    fn check_subset(&self, sub: &EventSet, what: &str) -> Result<(), DesError> {
        let stray: Vec<_> = sub.difference(&self.events).cloned().collect();
        if stray.is_empty() {
            Ok(())
        } else {
            Err(DesError::invalid(format!(
                "{what} events {stray:?} are not in the event universe"
            )))
        }
    }

    /// Checks the invariants a coordination problem needs:
    /// Σ1 ∪ Σ2 = Σ and Σ1 ∩ Σ2 ⊆ Σk ⊆ Σ1 ∪ Σ2.
    pub fn validate_coordination(&self) -> Result<(), DesError> {
        let union: EventSet = self.alphabet1.union(&self.alphabet2).cloned().collect();
        if union != self.events {
            let missing: Vec<_> = self.events.difference(&union).cloned().collect();
            return Err(DesError::invalid(format!(
                "sigma1 and sigma2 must cover the event universe; uncovered: {missing:?}"
            )));
        }
        let shared: EventSet = self
            .alphabet1
            .intersection(&self.alphabet2)
            .cloned()
            .collect();
        if !shared.is_subset(&self.alphabet_k) {
            let missing: Vec<_> = shared.difference(&self.alphabet_k).cloned().collect();
            return Err(DesError::invalid(format!(
                "sigmak must contain all shared events; missing: {missing:?}"
            )));
        }
        if !self.alphabet_k.is_subset(&union) {
            let stray: Vec<_> = self.alphabet_k.difference(&union).cloned().collect();
            return Err(DesError::invalid(format!(
                "sigmak must lie inside sigma1 ∪ sigma2; stray: {stray:?}"
            )));
        }
        Ok(())
    }

    pub fn events(&self) -> &EventSet {
        &self.events
    }

    pub fn controllable(&self) -> &EventSet {
        &self.controllable
    }

    pub fn observable(&self) -> &EventSet {
        &self.observable
    }

    pub fn alphabet1(&self) -> &EventSet {
        &self.alphabet1
    }

    pub fn alphabet2(&self) -> &EventSet {
        &self.alphabet2
    }

    pub fn alphabet_k(&self) -> &EventSet {
        &self.alphabet_k
    }

    /// Σu = Σ \ Σc, derived on demand.
    pub fn uncontrollable(&self) -> EventSet {
        self.events.difference(&self.controllable).cloned().collect()
    }

    /// Σuo = Σ \ Σo, derived on demand.
    pub fn unobservable(&self) -> EventSet {
        self.events.difference(&self.observable).cloned().collect()
    }

    /// Σi ∪ Σk for a subsystem alphabet Σi.
    pub fn alphabet_ik(&self, i: Subsystem) -> EventSet {
        self.subsystem_alphabet(i)
            .union(&self.alphabet_k)
            .cloned()
            .collect()
    }

    pub fn subsystem_alphabet(&self, i: Subsystem) -> &EventSet {
        match i {
            Subsystem::One => &self.alphabet1,
            Subsystem::Two => &self.alphabet2,
        }
    }

    /// Uncontrollable part of an arbitrary sub-alphabet, e.g. Σi,u = Σi ∩ Σu.
    pub fn uncontrollable_of(&self, sub: &EventSet) -> EventSet {
        sub.intersection(&self.uncontrollable()).cloned().collect()
    }

    /// Controllable part of an arbitrary sub-alphabet, e.g. Σi+k,c = Σc ∩ (Σi ∪ Σk).
    pub fn controllable_of(&self, sub: &EventSet) -> EventSet {
        sub.intersection(&self.controllable).cloned().collect()
    }

    /// Observable part of an arbitrary sub-alphabet.
    pub fn observable_of(&self, sub: &EventSet) -> EventSet {
        sub.intersection(&self.observable).cloned().collect()
    }

    /// Replaces the coordinator alphabet, e.g. after a decomposability
    /// extension.
    pub fn set_alphabet_k(&mut self, alphabet_k: EventSet) -> Result<(), DesError> {
        self.check_subset(&alphabet_k, "sigmak")?;
        self.alphabet_k = alphabet_k;
        Ok(())
    }
}

/// Selector for the two subsystems of a coordination problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subsystem {
    One,
    Two,
}

impl Subsystem {
    pub const BOTH: [Subsystem; 2] = [Subsystem::One, Subsystem::Two];

    pub fn index(self) -> usize {
        match self {
            Subsystem::One => 1,
            Subsystem::Two => 2,
        }
    }
}

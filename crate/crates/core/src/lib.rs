//! Coordination supervisory control of discrete-event systems under partial
//! observation.
//!
//! The crate is organized around deterministic generators with partial
//! transition functions ([`generator`]), the language operations over them
//! ([`ops`]), decision procedures with counterexample witnesses ([`checks`]),
//! supremal-sublanguage fixpoints ([`synthesis`]), the coordination layer with
//! its conditional properties and distributed synthesis pipelines
//! ([`coordination`]), and an independent bounded brute-force oracle
//! ([`oracle`]) that validates everything else on small instances.

pub mod checks;
pub mod coordination;
pub mod error;
pub mod fixtures;
pub mod event;
pub mod exec;
pub mod format;
pub mod generator;
pub mod ops;
pub mod oracle;
pub mod random;
pub mod synthesis;
pub mod witness;
pub mod words;

pub use error::DesError;
pub use event::{Event, EventSet, EventTable, Subsystem};
pub use generator::{Generator, LanguageKind};
pub use witness::{PropertyVerdict, Witness};

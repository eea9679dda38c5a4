//! Text formats: the automaton file format and the problem-bundle manifest.
//!
//! An automaton file is UTF-8 with `#` comments and order-insensitive
//! sections:
//!
//! ```text
//! alphabet: a tau
//! controllable: a
//! observable: a
//! states: 3
//! marked: 1 2
//! trans: 0 a 1
//! trans: 0 tau 2
//! ```
//!
//! States are `0..n-1` with `0` initial. A bundle manifest lists generator
//! files by role (`g1:`, `g2:`, `k:`, optional `gk:`, `c:`, `plant:`, …) plus
//! the event-table sections (`events:`, `controllable:`, `observable:`,
//! `sigma1:`, `sigma2:`, `sigmak:`). Serialization is canonical, so parse →
//! serialize → parse is the identity on canonical files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::error::DesError;
use crate::event::{Event, EventSet, EventTable};
use crate::generator::Generator;

#[derive(Debug, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column: 1,
            message: message.into(),
        }
    }

    /// Points at a token within the raw line when it can be located.
    fn at_token(line: usize, raw: &str, token: &str, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column: raw.find(token).map_or(1, |i| i + 1),
            message: message.into(),
        }
    }
}

impl From<ParseError> for DesError {
    fn from(e: ParseError) -> Self {
        DesError::invalid(e.to_string())
    }
}

/// A parsed automaton file: the generator plus its declared attribute lines.
#[derive(Debug, Clone)]
pub struct ParsedAutomaton {
    pub generator: Generator,
    pub controllable: Option<EventSet>,
    pub observable: Option<EventSet>,
    pub sigma1: Option<EventSet>,
    pub sigma2: Option<EventSet>,
    pub sigmak: Option<EventSet>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn split_kv(line: &str, lineno: usize) -> Result<(&str, &str), ParseError> {
    match line.find(':') {
        Some(i) => Ok((line[..i].trim(), line[i + 1..].trim())),
        None => Err(ParseError::new(
            lineno,
            format!("expected `key: value`, got `{line}`"),
        )),
    }
}

fn event_list(value: &str) -> EventSet {
    value.split_whitespace().map(Event::new).collect()
}

pub fn parse_automaton(text: &str) -> Result<ParsedAutomaton, ParseError> {
    let mut alphabet: Option<EventSet> = None;
    let mut controllable = None;
    let mut observable = None;
    let mut sigma1 = None;
    let mut sigma2 = None;
    let mut sigmak = None;
    let mut states: Option<usize> = None;
    let mut marked: Option<Vec<(usize, usize)>> = None;
    let mut trans: Vec<(usize, usize, Event, usize)> = Vec::new(); // (line, src, e, dst)
    let mut trans_lines: BTreeMap<usize, String> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = split_kv(line, lineno)?;
        match key {
            "alphabet" => alphabet = Some(event_list(value)),
            "controllable" => controllable = Some(event_list(value)),
            "observable" => observable = Some(event_list(value)),
            "sigma1" => sigma1 = Some(event_list(value)),
            "sigma2" => sigma2 = Some(event_list(value)),
            "sigmak" => sigmak = Some(event_list(value)),
            "states" => {
                let n: usize = value.parse().map_err(|_| {
                    ParseError::at_token(lineno, raw, value, format!("invalid state count `{value}`"))
                })?;
                if n == 0 {
                    return Err(ParseError::new(lineno, "state count must be positive"));
                }
                states = Some(n);
            }
            "marked" => {
                let mut list = Vec::new();
                for tok in value.split_whitespace() {
                    let q: usize = tok.parse().map_err(|_| {
                        ParseError::at_token(lineno, raw, tok, format!("invalid marked state `{tok}`"))
                    })?;
                    list.push((lineno, q));
                }
                marked = Some(list);
            }
            "trans" => {
                let toks: Vec<&str> = value.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(ParseError::new(
                        lineno,
                        format!("expected `trans: src event dst`, got `{value}`"),
                    ));
                }
                let src: usize = toks[0].parse().map_err(|_| {
                    ParseError::at_token(lineno, raw, toks[0], format!("invalid source state `{}`", toks[0]))
                })?;
                let dst: usize = toks[2].parse().map_err(|_| {
                    ParseError::at_token(lineno, raw, toks[2], format!("invalid target state `{}`", toks[2]))
                })?;
                trans_lines.insert(lineno, raw.to_string());
                trans.push((lineno, src, Event::new(toks[1]), dst));
            }
            other => {
                return Err(ParseError::at_token(lineno, raw, other, format!("unknown key `{other}`")));
            }
        }
    }

    let alphabet = alphabet.ok_or_else(|| ParseError::new(0, "missing `alphabet:` section"))?;
    let n = states.ok_or_else(|| ParseError::new(0, "missing `states:` section"))?;
    let mut transitions: Vec<BTreeMap<Event, usize>> = vec![BTreeMap::new(); n];
    for (lineno, src, e, dst) in trans {
        let raw = trans_lines.get(&lineno).map(String::as_str).unwrap_or("");
        if src >= n || dst >= n {
            let offending = if src >= n { src } else { dst }.to_string();
            return Err(ParseError::at_token(
                lineno,
                raw,
                &offending,
                format!("transition {src} {e} {dst} out of range (states: {n})"),
            ));
        }
        if !alphabet.contains(&e) {
            return Err(ParseError::at_token(
                lineno,
                raw,
                e.name(),
                format!("event `{e}` is not in the alphabet"),
            ));
        }
        if transitions[src].insert(e.clone(), dst).is_some() {
            return Err(ParseError::at_token(
                lineno,
                raw,
                e.name(),
                format!("duplicate transition from {src} on `{e}` (generators are deterministic)"),
            ));
        }
    }
    let mut marked_set = BTreeSet::new();
    for (lineno, q) in marked.unwrap_or_default() {
        if q >= n {
            return Err(ParseError::new(
                lineno,
                format!("marked state {q} out of range (states: {n})"),
            ));
        }
        marked_set.insert(q);
    }
    let generator = Generator::new(alphabet, transitions, 0, marked_set)
        .map_err(|e| ParseError::new(0, e.to_string()))?;
    Ok(ParsedAutomaton {
        generator,
        controllable,
        observable,
        sigma1,
        sigma2,
        sigmak,
    })
}

fn write_events(out: &mut String, key: &str, events: &EventSet) {
    out.push_str(key);
    out.push(':');
    for e in events {
        out.push(' ');
        out.push_str(e.name());
    }
    out.push('\n');
}

/// Canonical serialization. The generator is renumbered breadth-first so the
/// initial state is 0; attribute lines are clipped to the alphabet and
/// emitted only when provided.
pub fn serialize_automaton(g: &Generator, table: Option<&EventTable>) -> String {
    let g = g.canonicalize();
    let mut out = String::new();
    write_events(&mut out, "alphabet", g.alphabet());
    if let Some(t) = table {
        write_events(&mut out, "controllable", &t.controllable_of(g.alphabet()));
        write_events(&mut out, "observable", &t.observable_of(g.alphabet()));
    }
    out.push_str(&format!("states: {}\n", g.state_count()));
    out.push_str("marked:");
    for q in g.marked() {
        out.push_str(&format!(" {q}"));
    }
    out.push('\n');
    for (src, e, dst) in g.transitions() {
        out.push_str(&format!("trans: {src} {e} {dst}\n"));
    }
    out
}

/// A parsed problem bundle: generator files by role plus the event table.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub generators: BTreeMap<String, ParsedAutomaton>,
    pub table: EventTable,
}

pub const BUNDLE_ROLES: [&str; 8] = ["g1", "g2", "gk", "k", "c", "plant", "l1", "l2"];

/// Raw bundle manifest: role → file path plus event-table sections.
#[derive(Debug, Clone, Default)]
pub struct BundleManifest {
    pub paths: BTreeMap<String, String>,
    pub events: Option<EventSet>,
    pub controllable: Option<EventSet>,
    pub observable: Option<EventSet>,
    pub sigma1: Option<EventSet>,
    pub sigma2: Option<EventSet>,
    pub sigmak: Option<EventSet>,
}

pub fn parse_bundle_manifest(text: &str) -> Result<BundleManifest, ParseError> {
    let mut m = BundleManifest::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = split_kv(line, lineno)?;
        match key {
            "events" => m.events = Some(event_list(value)),
            "controllable" => m.controllable = Some(event_list(value)),
            "observable" => m.observable = Some(event_list(value)),
            "sigma1" => m.sigma1 = Some(event_list(value)),
            "sigma2" => m.sigma2 = Some(event_list(value)),
            "sigmak" => m.sigmak = Some(event_list(value)),
            role if BUNDLE_ROLES.contains(&role) => {
                if value.is_empty() {
                    return Err(ParseError::new(lineno, format!("empty path for `{role}`")));
                }
                if m.paths.insert(role.to_string(), value.to_string()).is_some() {
                    return Err(ParseError::new(lineno, format!("duplicate role `{role}`")));
                }
            }
            other => {
                return Err(ParseError::new(lineno, format!("unknown key `{other}`")));
            }
        }
    }
    Ok(m)
}

/// Assembles the effective event table of a bundle. Manifest sections win;
/// anything missing is derived from the parsed files, with conflicting
/// per-file attribute declarations rejected.
pub fn assemble_table(
    manifest: &BundleManifest,
    generators: &BTreeMap<String, ParsedAutomaton>,
) -> Result<EventTable, DesError> {
    let mut events: EventSet = manifest.events.clone().unwrap_or_default();
    for parsed in generators.values() {
        events.extend(parsed.generator.alphabet().iter().cloned());
    }

    let merge = |section: &Option<EventSet>,
                 pick: &dyn Fn(&ParsedAutomaton) -> &Option<EventSet>,
                 what: &str|
     -> Result<EventSet, DesError> {
        if let Some(s) = section {
            return Ok(s.clone());
        }
        let mut merged = EventSet::new();
        for parsed in generators.values() {
            if let Some(s) = pick(parsed) {
                merged.extend(s.iter().cloned());
            }
        }
        // an event declared in one file but excluded by another file that
        // also declares the section and contains the event is a conflict
        for parsed in generators.values() {
            if let Some(s) = pick(parsed) {
                for e in merged.iter() {
                    if parsed.generator.alphabet().contains(e) && !s.contains(e) {
                        return Err(DesError::invalid(format!(
                            "conflicting `{what}` declarations for event `{e}` across bundle files"
                        )));
                    }
                }
            }
        }
        Ok(merged)
    };

    let controllable = merge(&manifest.controllable, &|p| &p.controllable, "controllable")?;
    let observable = merge(&manifest.observable, &|p| &p.observable, "observable")?;
    let sigma1 = match &manifest.sigma1 {
        Some(s) => s.clone(),
        None => generators
            .get("g1")
            .map(|p| p.generator.alphabet().clone())
            .unwrap_or_default(),
    };
    let sigma2 = match &manifest.sigma2 {
        Some(s) => s.clone(),
        None => generators
            .get("g2")
            .map(|p| p.generator.alphabet().clone())
            .unwrap_or_default(),
    };
    let sigmak = match &manifest.sigmak {
        Some(s) => s.clone(),
        None => generators
            .get("gk")
            .map(|p| p.generator.alphabet().clone())
            .unwrap_or_default(),
    };
    EventTable::new(events, controllable, observable)?.with_decomposition(sigma1, sigma2, sigmak)
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bundle with roles {:?}", self.generators.keys())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::event_set;
    use crate::generator::LanguageKind;
    use crate::words::word;

    const SMALL: &str = "\
# a small generator
alphabet: a tau
controllable: a
observable: a
states: 4
marked: 0 1 2 3
trans: 0 a 1
trans: 0 tau 2
trans: 2 a 3
";

    #[test]
    fn parse_then_serialize_then_parse_is_identity() {
        let parsed = parse_automaton(SMALL).unwrap();
        assert_eq!(parsed.generator.state_count(), 4);
        assert!(parsed.generator.accepts(&word(["tau", "a"]), LanguageKind::Marked));
        assert_eq!(parsed.controllable, Some(event_set(["a"])));

        let table = EventTable::new(event_set(["a", "tau"]), event_set(["a"]), event_set(["a"]))
            .unwrap();
        let text = serialize_automaton(&parsed.generator, Some(&table));
        let reparsed = parse_automaton(&text).unwrap();
        assert_eq!(reparsed.generator, parsed.generator.canonicalize());
        assert_eq!(serialize_automaton(&reparsed.generator, Some(&table)), text);
    }

    #[test]
    fn sections_are_order_insensitive() {
        let shuffled = "\
trans: 0 a 1
marked: 1
states: 2
alphabet: a
";
        let parsed = parse_automaton(shuffled).unwrap();
        assert!(parsed.generator.accepts(&word(["a"]), LanguageKind::Marked));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "alphabet: a\nstates: 2\ntrans: 0 b 1\n";
        let err = parse_automaton(bad).unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.column, 10); // points at the offending event token

        let dup = "alphabet: a\nstates: 2\ntrans: 0 a 1\ntrans: 0 a 0\n";
        let err = parse_automaton(dup).unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("deterministic"));

        let unk = "alphabet: a\nstates: 1\nbogus: 1\n";
        let err = parse_automaton(unk).unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn bundle_manifest_roundtrip() {
        let manifest = parse_bundle_manifest(
            "g1: g1.aut\ng2: g2.aut\nk: k.aut\nsigmak: tau\nobservable: a\ncontrollable: a tau\n",
        )
        .unwrap();
        assert_eq!(manifest.paths.len(), 3);
        assert_eq!(manifest.sigmak, Some(event_set(["tau"])));

        let err = parse_bundle_manifest("nonsense: x\n").unwrap_err();
        assert_eq!(err.line, 1);
    }
}

//! Problem-bundle loading: a manifest of generator files by role plus the
//! event-table sections, with paths resolved relative to the manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};

use coordctl_core::coordination::{CoordinationProblem, DecomposabilityPolicy};
use coordctl_core::format::{
    assemble_table, parse_automaton, parse_bundle_manifest, serialize_automaton, ParsedAutomaton,
};
use coordctl_core::{EventTable, Generator};

pub struct LoadedBundle {
    pub generators: BTreeMap<String, ParsedAutomaton>,
    pub table: EventTable,
}

pub fn load_bundle(path: &Path) -> Result<LoadedBundle> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read bundle `{}`", path.display()))?;
    let manifest = parse_bundle_manifest(&text)
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let mut generators = BTreeMap::new();
    for (role, rel) in &manifest.paths {
        let file = dir.join(rel);
        let text = fs::read_to_string(&file)
            .with_context(|| format!("cannot read `{}` for role `{role}`", file.display()))?;
        let parsed = parse_automaton(&text)
            .map_err(|e| anyhow!("{}: {e}", file.display()))?;
        generators.insert(role.clone(), parsed);
    }
    let table = assemble_table(&manifest, &generators)?;
    Ok(LoadedBundle { generators, table })
}

impl LoadedBundle {
    pub fn role(&self, name: &str) -> Result<&Generator> {
        self.generators
            .get(name)
            .map(|p| &p.generator)
            .ok_or_else(|| anyhow!("the bundle has no `{name}:` entry"))
    }

    pub fn optional_role(&self, name: &str) -> Option<&Generator> {
        self.generators.get(name).map(|p| &p.generator)
    }

    /// The plant of a monolithic check: role `plant`, falling back to the
    /// composition of `g1`, `g2` and the optional `gk`.
    pub fn plant(&self) -> Result<Generator> {
        if let Some(p) = self.optional_role("plant") {
            return Ok(p.clone());
        }
        let (Some(g1), Some(g2)) = (self.optional_role("g1"), self.optional_role("g2")) else {
            return Err(anyhow!(
                "the bundle needs a `plant:` entry or both `g1:` and `g2:`"
            ));
        };
        let two = coordctl_core::ops::sync_product(g1, g2);
        Ok(match self.optional_role("gk") {
            Some(gk) => coordctl_core::ops::sync_product(&two, gk),
            None => two,
        })
    }

    pub fn problem(&self, policy: DecomposabilityPolicy) -> Result<CoordinationProblem> {
        let g1 = self.role("g1")?.clone();
        let g2 = self.role("g2")?.clone();
        let k = self.role("k")?.clone();
        let gk = self.optional_role("gk").cloned();
        Ok(CoordinationProblem::new(
            g1,
            g2,
            gk,
            k,
            self.table.clone(),
            policy,
        )?)
    }
}

/// Writes a whole problem as a regression bundle: one automaton file per
/// role plus the manifest.
pub fn write_problem_bundle(dir: &Path, name: &str, p: &CoordinationProblem) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let table = p.table();
    let mut manifest = String::new();
    for (role, g) in [
        ("g1", p.g1()),
        ("g2", p.g2()),
        ("gk", p.gk()),
        ("k", p.spec()),
    ] {
        let file = format!("{name}_{role}.aut");
        fs::write(dir.join(&file), serialize_automaton(g, Some(table)))?;
        manifest.push_str(&format!("{role}: {file}\n"));
    }
    let fmt_events = |set: &coordctl_core::EventSet| {
        set.iter()
            .map(|e| e.name().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    manifest.push_str(&format!("events: {}\n", fmt_events(table.events())));
    manifest.push_str(&format!("controllable: {}\n", fmt_events(table.controllable())));
    manifest.push_str(&format!("observable: {}\n", fmt_events(table.observable())));
    manifest.push_str(&format!("sigma1: {}\n", fmt_events(table.alphabet1())));
    manifest.push_str(&format!("sigma2: {}\n", fmt_events(table.alphabet2())));
    manifest.push_str(&format!("sigmak: {}\n", fmt_events(table.alphabet_k())));
    let path = dir.join(format!("{name}.bundle"));
    fs::write(&path, manifest)?;
    Ok(path)
}

//! Coordination control: conditional decomposability, coordinator
//! construction, the conditional variants of the monolithic properties, and
//! the two distributed synthesis pipelines with certified theorem hypotheses.
//!
//! A coordination problem consists of two subsystems `G1`, `G2` over Σ1 and
//! Σ2, a coordinator `Gk` over a Σk between Σ1 ∩ Σ2 and Σ1 ∪ Σ2, and a
//! specification `K ⊆ Lm(G1 ∥ G2 ∥ Gk)`. Conditional properties impose the
//! corresponding monolithic property on `Pk(K)` against the coordinator and
//! on `Pi+k(K)` against each subsystem composed with the coordinated part.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::checks::{
    self, generated_as_marked, is_controllable, is_lm_closed, is_normal, is_observable,
    is_relatively_observable,
};
use crate::error::DesError;
use crate::event::{Event, EventSet, EventTable, Subsystem};
use crate::exec;
use crate::generator::{Generator, LanguageKind};
use crate::ops::{
    is_sublanguage, language_intersection, project, sync_product,
};
use crate::synthesis::{sup_c_and_ro_with, sup_controllable_with, SynthOptions};
use crate::witness::{PropertyVerdict, Witness};

/// Where a conditional clause was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentId {
    Coordinator,
    Subsystem1,
    Subsystem2,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionCheck {
    pub component: ComponentId,
    #[serde(flatten)]
    pub verdict: PropertyVerdict,
}

/// Verdict of a conditional property: the conjunction of its per-component
/// clauses, all of which are evaluated and reported.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionalVerdict {
    pub holds: bool,
    pub components: Vec<ConditionCheck>,
}

impl ConditionalVerdict {
    fn from_checks(components: Vec<ConditionCheck>) -> Self {
        ConditionalVerdict {
            holds: components.iter().all(|c| c.verdict.holds),
            components,
        }
    }

    /// First failing clause, if any.
    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.components.iter().find(|c| !c.verdict.holds)
    }
}

/// How strictly problem construction treats conditional decomposability of
/// the specification and of its prefix closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecomposabilityPolicy {
    /// Both the specification and its closure must be decomposable.
    #[default]
    Enforce,
    /// The specification must be decomposable; a non-decomposable closure
    /// only produces a warning.
    WarnOnClosure,
    /// No decomposability requirements (property checks do not need them).
    Skip,
}

/// The input of a coordination problem, validated and normalized: every
/// generator carries exactly its full alphabet from the table, the
/// coordinator defaults to `Pk(G1) ∥ Pk(G2)`, and the specification is a
/// marked sublanguage of the composed plant.
#[derive(Debug, Clone)]
pub struct CoordinationProblem {
    g1: Generator,
    g2: Generator,
    gk: Generator,
    spec: Generator,
    table: EventTable,
    plant: Generator,
    warnings: Vec<String>,
}

impl CoordinationProblem {
    pub fn new(
        g1: Generator,
        g2: Generator,
        gk: Option<Generator>,
        spec: Generator,
        table: EventTable,
        policy: DecomposabilityPolicy,
    ) -> Result<Self, DesError> {
        table.validate_coordination()?;
        let g1 = g1.extend_alphabet(table.alphabet1()).map_err(|_| {
            DesError::invalid("G1 uses events outside sigma1")
        })?;
        let g2 = g2.extend_alphabet(table.alphabet2()).map_err(|_| {
            DesError::invalid("G2 uses events outside sigma2")
        })?;
        let gk = match gk {
            Some(gk) => gk.extend_alphabet(table.alphabet_k()).map_err(|_| {
                DesError::invalid("Gk uses events outside sigmak")
            })?,
            None => make_coordinator(&g1, &g2, &table)?,
        };
        let spec = spec.extend_alphabet(table.events()).map_err(|_| {
            DesError::invalid("the specification uses events outside sigma1 ∪ sigma2")
        })?;
        let plant = sync_product(&sync_product(&g1, &g2), &gk);
        if let Some(w) = is_sublanguage(&spec, &plant, LanguageKind::Marked)?.witness {
            return Err(DesError::InclusionViolated {
                what: "the specification".into(),
                of: "the marked language of G1 ∥ G2 ∥ Gk".into(),
                witness: w.describe(),
            });
        }

        let mut warnings = Vec::new();
        match policy {
            DecomposabilityPolicy::Skip => {}
            DecomposabilityPolicy::Enforce | DecomposabilityPolicy::WarnOnClosure => {
                let v = is_conditionally_decomposable(&spec, &table)?;
                if let Some(w) = v.witness {
                    return Err(DesError::NotDecomposable {
                        witness: w.describe(),
                    });
                }
                let vc = is_conditionally_decomposable(&spec.prefix_closure(), &table)?;
                if let Some(w) = vc.witness {
                    match policy {
                        DecomposabilityPolicy::Enforce => {
                            return Err(DesError::NotDecomposable {
                                witness: format!("(prefix closure) {}", w.describe()),
                            });
                        }
                        _ => warnings.push(format!(
                            "the prefix closure of the specification is not conditionally decomposable: {}",
                            w.describe()
                        )),
                    }
                }
            }
        }

        Ok(CoordinationProblem {
            g1,
            g2,
            gk,
            spec,
            table,
            plant,
            warnings,
        })
    }

    /// Same plants and table, different specification; decomposability is not
    /// re-imposed (sublanguage candidates need not be decomposable).
    pub fn with_spec(&self, spec: Generator) -> Result<Self, DesError> {
        let spec = spec.extend_alphabet(self.table.events()).map_err(|_| {
            DesError::invalid("the specification uses events outside sigma1 ∪ sigma2")
        })?;
        if let Some(w) = is_sublanguage(&spec, &self.plant, LanguageKind::Marked)?.witness {
            return Err(DesError::InclusionViolated {
                what: "the specification".into(),
                of: "the marked language of G1 ∥ G2 ∥ Gk".into(),
                witness: w.describe(),
            });
        }
        Ok(CoordinationProblem {
            spec,
            warnings: Vec::new(),
            ..self.clone()
        })
    }

    pub fn g1(&self) -> &Generator {
        &self.g1
    }

    pub fn g2(&self) -> &Generator {
        &self.g2
    }

    pub fn subsystem(&self, i: Subsystem) -> &Generator {
        match i {
            Subsystem::One => &self.g1,
            Subsystem::Two => &self.g2,
        }
    }

    pub fn gk(&self) -> &Generator {
        &self.gk
    }

    pub fn spec(&self) -> &Generator {
        &self.spec
    }

    pub fn table(&self) -> &EventTable {
        &self.table
    }

    /// The composed plant `G1 ∥ G2 ∥ Gk`.
    pub fn plant(&self) -> &Generator {
        &self.plant
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `Pk(K)` for an arbitrary language over the universe.
    pub fn project_k(&self, g: &Generator) -> Generator {
        project(g, self.table.alphabet_k())
    }

    /// `Pi+k(K)`.
    pub fn project_ik(&self, g: &Generator, i: Subsystem) -> Generator {
        project(g, &self.table.alphabet_ik(i))
    }

    /// Component plant `L(Gi) ∥ closure(Pk(K))` for the current spec.
    fn component_plant(&self, pk_spec: &Generator, i: Subsystem) -> Generator {
        sync_product(self.subsystem(i), &pk_spec.prefix_closure())
    }
}

/// Conditional decomposability: `K = P1+k(K) ∥ P2+k(K)`. The inclusion of
/// `K` in the composition always holds, so the witness is a word of the
/// composition outside `K`.
pub fn is_conditionally_decomposable(
    k: &Generator,
    table: &EventTable,
) -> Result<PropertyVerdict, DesError> {
    let union: EventSet = table
        .alphabet1()
        .union(table.alphabet2())
        .cloned()
        .collect();
    let shared: EventSet = table
        .alphabet1()
        .intersection(table.alphabet2())
        .cloned()
        .collect();
    if !shared.is_subset(table.alphabet_k()) {
        return Err(DesError::invalid(
            "sigmak must contain sigma1 ∩ sigma2 for decomposability checks",
        ));
    }
    if !k.alphabet().is_subset(&union) {
        return Err(DesError::invalid(
            "the language alphabet must lie inside sigma1 ∪ sigma2",
        ));
    }
    let p1 = project(k, &table.alphabet_ik(Subsystem::One));
    let p2 = project(k, &table.alphabet_ik(Subsystem::Two));
    let composed = sync_product(&p1, &p2);
    let mut verdict = is_sublanguage(&composed, k, LanguageKind::Marked)?;
    if let Some(Witness::Word { note, .. }) = verdict.witness.as_mut() {
        *note = "word of P1+k(K) ∥ P2+k(K) outside K".into();
    }
    Ok(verdict)
}

/// Greedy sufficient extension of Σk until both the language and its prefix
/// closure are conditionally decomposable. One event is promoted per round:
/// the least event of the current witness inside (Σ1 ∪ Σ2) \ Σk, events
/// shared by both subsystems first; when the witness offers none, the least
/// remaining event overall. Terminates because Σk = Σ1 ∪ Σ2 always suffices.
/// Minimality is not promised.
pub fn extend_coordinator_alphabet(
    k: &Generator,
    table: &EventTable,
) -> Result<EventSet, DesError> {
    let union: EventSet = table
        .alphabet1()
        .union(table.alphabet2())
        .cloned()
        .collect();
    let shared: EventSet = table
        .alphabet1()
        .intersection(table.alphabet2())
        .cloned()
        .collect();
    let mut sigma_k = table.alphabet_k().clone();
    let closure = k.prefix_closure();
    loop {
        let t = table
            .clone()
            .with_decomposition(
                table.alphabet1().clone(),
                table.alphabet2().clone(),
                sigma_k.clone(),
            )?;
        let v = is_conditionally_decomposable(k, &t)?;
        let vc = if v.holds {
            is_conditionally_decomposable(&closure, &t)?
        } else {
            v.clone()
        };
        let witness = match (v.witness, vc.witness) {
            (Some(w), _) | (None, Some(w)) => w,
            (None, None) => return Ok(sigma_k),
        };
        let word = match &witness {
            Witness::Word { word, .. } => word.clone(),
            _ => Vec::new(),
        };
        let candidates: Vec<Event> = word
            .iter()
            .filter(|e| union.contains(*e) && !sigma_k.contains(*e))
            .cloned()
            .collect();
        let pick = candidates
            .iter()
            .filter(|e| shared.contains(*e))
            .min()
            .or_else(|| candidates.iter().min())
            .cloned()
            .or_else(|| union.difference(&sigma_k).next().cloned());
        match pick {
            Some(e) => {
                sigma_k.insert(e);
            }
            None => {
                // Σk already covers Σ1 ∪ Σ2, where both checks hold
                return Err(DesError::invalid(
                    "internal error: no extension candidate although decomposability fails",
                ));
            }
        }
    }
}

/// Canonical coordinator `Gk = Pk(G1) ∥ Pk(G2)`, which never affects the
/// composed plant: `G1 ∥ G2 ∥ Gk = G1 ∥ G2`.
pub fn make_coordinator(
    g1: &Generator,
    g2: &Generator,
    table: &EventTable,
) -> Result<Generator, DesError> {
    let shared: EventSet = table
        .alphabet1()
        .intersection(table.alphabet2())
        .cloned()
        .collect();
    if !shared.is_subset(table.alphabet_k()) {
        return Err(DesError::invalid(
            "sigmak must contain sigma1 ∩ sigma2 to build a coordinator",
        ));
    }
    let p1 = project(g1, table.alphabet_k());
    let p2 = project(g2, table.alphabet_k());
    sync_product(&p1, &p2).extend_alphabet(table.alphabet_k())
}


/// Evaluates the two subsystem-level clauses of a conditional property,
/// in parallel when the crate is built with the `parallel` feature (they are
/// independent given the coordinator-level projection).
fn both_subsystem_checks<F>(clause: F) -> Result<Vec<ConditionCheck>, DesError>
where
    F: Fn(Subsystem) -> Result<PropertyVerdict, DesError> + Sync,
{
    let (one, two) = exec::join(
        exec::parallel_default(),
        || clause(Subsystem::One),
        || clause(Subsystem::Two),
    );
    Ok(vec![
        ConditionCheck {
            component: ComponentId::Subsystem1,
            verdict: one?,
        },
        ConditionCheck {
            component: ComponentId::Subsystem2,
            verdict: two?,
        },
    ])
}

/// Conditional controllability: `Pk(K)` controllable w.r.t. `L(Gk)` and
/// Σk,u, and `Pi+k(K)` controllable w.r.t. `L(Gi) ∥ closure(Pk(K))` and
/// Σi+k,u for both subsystems.
pub fn is_conditionally_controllable(
    p: &CoordinationProblem,
) -> Result<ConditionalVerdict, DesError> {
    let pk = p.project_k(p.spec());
    let sigma_u = p.table.uncontrollable();
    let mut components = vec![ConditionCheck {
        component: ComponentId::Coordinator,
        verdict: is_controllable(&pk, p.gk(), &sigma_u)?,
    }];
    components.extend(both_subsystem_checks(|i| {
        let plant = p.component_plant(&pk, i);
        is_controllable(&p.project_ik(p.spec(), i), &plant, &sigma_u)
    })?);
    Ok(ConditionalVerdict::from_checks(components))
}

/// Conditional observability (σ quantified over the controllable part of
/// each component alphabet, as in the supervisor-existence refinement).
pub fn is_conditionally_observable(
    p: &CoordinationProblem,
) -> Result<ConditionalVerdict, DesError> {
    let pk = p.project_k(p.spec());
    let sigma_o = p.table.observable();
    let sigma_c = p.table.controllable();
    let mut components = vec![ConditionCheck {
        component: ComponentId::Coordinator,
        verdict: is_observable(&pk, p.gk(), sigma_o, sigma_c)?,
    }];
    components.extend(both_subsystem_checks(|i| {
        let plant = p.component_plant(&pk, i);
        is_observable(&p.project_ik(p.spec(), i), &plant, sigma_o, sigma_c)
    })?);
    Ok(ConditionalVerdict::from_checks(components))
}

/// Conditional closedness: `Pk(K)` is `Lm(Gk)`-closed and `Pi+k(K)` is
/// `(Lm(Gi) ∥ Pk(K))`-closed.
pub fn is_conditionally_closed(p: &CoordinationProblem) -> Result<ConditionalVerdict, DesError> {
    let pk = p.project_k(p.spec());
    let mut components = vec![ConditionCheck {
        component: ComponentId::Coordinator,
        verdict: is_lm_closed(&pk, p.gk())?,
    }];
    components.extend(both_subsystem_checks(|i| {
        let m = sync_product(p.subsystem(i), &pk);
        is_lm_closed(&p.project_ik(p.spec(), i), &m)
    })?);
    Ok(ConditionalVerdict::from_checks(components))
}

/// Conditional normality: `Pk(K)` normal w.r.t. `L(Gk)` and `Pi+k(K)` normal
/// w.r.t. `L(Gi) ∥ closure(Pk(K))`, under the respective observation
/// projections.
pub fn is_conditionally_normal(p: &CoordinationProblem) -> Result<ConditionalVerdict, DesError> {
    let pk = p.project_k(p.spec());
    let sigma_o = p.table.observable();
    let mut components = vec![ConditionCheck {
        component: ComponentId::Coordinator,
        verdict: is_normal(&pk, p.gk(), sigma_o)?,
    }];
    components.extend(both_subsystem_checks(|i| {
        let plant = p.component_plant(&pk, i);
        is_normal(&p.project_ik(p.spec(), i), &plant, sigma_o)
    })?);
    Ok(ConditionalVerdict::from_checks(components))
}

fn require_ambient(p: &CoordinationProblem, c: &Generator) -> Result<Generator, DesError> {
    let c = c.extend_alphabet(p.table.events()).map_err(|_| {
        DesError::invalid("the ambient language uses events outside sigma1 ∪ sigma2")
    })?;
    if let Some(w) = is_sublanguage(p.spec(), &c, LanguageKind::Marked)?.witness {
        return Err(DesError::InclusionViolated {
            what: "the specification".into(),
            of: "the ambient language".into(),
            witness: w.describe(),
        });
    }
    if let Some(w) = is_sublanguage(&c, p.plant(), LanguageKind::Marked)?.witness {
        return Err(DesError::InclusionViolated {
            what: "the ambient language".into(),
            of: "the marked language of G1 ∥ G2 ∥ Gk".into(),
            witness: w.describe(),
        });
    }
    Ok(c)
}

/// Conditional relative observability w.r.t. an ambient `C` with
/// `K ⊆ C ⊆ Lm(G1 ∥ G2 ∥ Gk)`: `Pk(K)` is `Pk(C)`-observable against the
/// coordinator and `Pi+k(K)` is `Pi+k(C)`-observable against
/// `L(Gi) ∥ closure(Pk(K))`.
pub fn is_conditionally_c_observable(
    p: &CoordinationProblem,
    c: &Generator,
) -> Result<ConditionalVerdict, DesError> {
    conditional_relative_observability(p, c, false)
}

/// The strong variant: the subsystem-level plant is `L(Gi) ∥ L(Gk)` instead
/// of `L(Gi) ∥ closure(Pk(K))`. Unlike the weak variant this family is
/// closed under unions.
pub fn is_conditionally_strong_c_observable(
    p: &CoordinationProblem,
    c: &Generator,
) -> Result<ConditionalVerdict, DesError> {
    conditional_relative_observability(p, c, true)
}

fn conditional_relative_observability(
    p: &CoordinationProblem,
    c: &Generator,
    strong: bool,
) -> Result<ConditionalVerdict, DesError> {
    let c = require_ambient(p, c)?;
    let pk = p.project_k(p.spec());
    let pk_c = p.project_k(&c);
    let sigma_o = p.table.observable();
    let mut components = vec![ConditionCheck {
        component: ComponentId::Coordinator,
        verdict: is_relatively_observable(&pk, &pk_c, p.gk(), sigma_o)?,
    }];
    components.extend(both_subsystem_checks(|i| {
        let plant = if strong {
            sync_product(p.subsystem(i), p.gk())
        } else {
            p.component_plant(&pk, i)
        };
        is_relatively_observable(
            &p.project_ik(p.spec(), i),
            &p.project_ik(&c, i),
            &plant,
            sigma_o,
        )
    })?);
    Ok(ConditionalVerdict::from_checks(components))
}

/// Which distributed pipeline produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Cc,
    Cro,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisVerdict {
    pub name: String,
    #[serde(flatten)]
    pub verdict: PropertyVerdict,
}

/// Everything a synthesis run produces: the intermediate languages, the
/// hypothesis verdicts of the certifying theorem, and the certification flag
/// (true only when every hypothesis holds).
#[derive(Debug, Clone)]
pub struct SynthesisReport {
    pub pipeline: Pipeline,
    pub languages: BTreeMap<String, Generator>,
    pub hypotheses: Vec<HypothesisVerdict>,
    pub certified: bool,
    pub notes: Vec<String>,
}

impl SynthesisReport {
    pub fn language(&self, name: &str) -> &Generator {
        &self.languages[name]
    }

    /// The composed result: `supC_1k ∥ supC_2k` or `M`.
    pub fn result(&self) -> &Generator {
        match self.pipeline {
            Pipeline::Cc => self.language("sup_cc"),
            Pipeline::Cro => self.language("m"),
        }
    }
}

/// The conditionally-controllable pipeline: computes `supC_k`, then the two
/// component languages against `L(Gi) ∥ closure(supC_k)`, and certifies that
/// their composition is the supremal conditionally controllable sublanguage
/// when the components are nonconflicting and the intersection of their
/// coordinator parts is controllable.
pub fn synthesize_cc(p: &CoordinationProblem) -> Result<SynthesisReport, DesError> {
    synthesize_cc_with(p, &SynthOptions::default())
}

pub fn synthesize_cc_with(
    p: &CoordinationProblem,
    opts: &SynthOptions,
) -> Result<SynthesisReport, DesError> {
    let sigma_u = p.table.uncontrollable();
    let pk_spec = p.project_k(p.spec());
    let sup_k = sup_controllable_with(&pk_spec, p.gk(), &sigma_u, opts)?.language;

    let component = |i: Subsystem| -> Result<Generator, DesError> {
        if sup_k.is_empty_marked() {
            // L(Gi) ∥ ∅ = ∅
            return Ok(Generator::empty_language(p.table.alphabet_ik(i)));
        }
        let plant = sync_product(p.subsystem(i), &sup_k.prefix_closure());
        let spec_i = language_intersection(
            &p.project_ik(p.spec(), i),
            &generated_as_marked(&plant),
        )?;
        Ok(sup_controllable_with(&spec_i, &plant, &sigma_u, opts)?.language)
    };
    let (r1, r2) = exec::join(
        exec::parallel_default(),
        || component(Subsystem::One),
        || component(Subsystem::Two),
    );
    let (sup_1k, sup_2k) = (r1?, r2?);
    let composition = sync_product(&sup_1k, &sup_2k);

    let nonconflicting = checks::is_nonconflicting(&sup_1k, &sup_2k)?;
    let coordinator_parts = language_intersection(
        &p.project_k(&sup_1k),
        &p.project_k(&sup_2k),
    )?;
    let parts_controllable = is_controllable(&coordinator_parts, p.gk(), &sigma_u)?;

    let certified = nonconflicting.holds && parts_controllable.holds;
    let mut notes = Vec::new();
    if certified {
        notes.push(
            "certified: the composition equals the supremal conditionally controllable sublanguage"
                .to_string(),
        );
    }

    let mut languages = BTreeMap::new();
    languages.insert("sup_c_k".to_string(), sup_k);
    languages.insert("sup_c_1k".to_string(), sup_1k);
    languages.insert("sup_c_2k".to_string(), sup_2k);
    languages.insert("sup_cc".to_string(), composition);
    Ok(SynthesisReport {
        pipeline: Pipeline::Cc,
        languages,
        hypotheses: vec![
            HypothesisVerdict {
                name: "components_nonconflicting".into(),
                verdict: nonconflicting,
            },
            HypothesisVerdict {
                name: "coordinator_parts_intersection_controllable".into(),
                verdict: parts_controllable,
            },
        ],
        certified,
        notes,
    })
}

/// The partial-observation pipeline: computes `supCRO_k` and the two
/// component languages (each supremal controllable and relatively observable
/// with ambient pinned to the component specification intersected with its
/// plant), composes them into `M`, and certifies `M` conditionally
/// controllable and conditionally observable — hence containing the supremal
/// conditionally controllable and conditionally strong relatively observable
/// sublanguage — when the components are nonconflicting and `Pk(M)` is
/// controllable and `Pk(C)`-observable against the coordinator.
///
/// `ambient_override` supplies the `C` of the certificate; by default the
/// weakest sufficient instance `C = M` is used.
pub fn synthesize_cro(
    p: &CoordinationProblem,
    ambient_override: Option<&Generator>,
) -> Result<SynthesisReport, DesError> {
    synthesize_cro_with(p, ambient_override, &SynthOptions::default())
}

pub fn synthesize_cro_with(
    p: &CoordinationProblem,
    ambient_override: Option<&Generator>,
    opts: &SynthOptions,
) -> Result<SynthesisReport, DesError> {
    let sigma_u = p.table.uncontrollable();
    let sigma_o = p.table.observable();
    let pk_spec = p.project_k(p.spec());
    let sup_k = sup_c_and_ro_with(&pk_spec, p.gk(), &sigma_u, sigma_o, opts)?.language;

    let component = |i: Subsystem| -> Result<Generator, DesError> {
        if sup_k.is_empty_marked() {
            return Ok(Generator::empty_language(p.table.alphabet_ik(i)));
        }
        let plant = sync_product(p.subsystem(i), &sup_k.prefix_closure());
        Ok(sup_c_and_ro_with(&p.project_ik(p.spec(), i), &plant, &sigma_u, sigma_o, opts)?
            .language)
    };
    let (r1, r2) = exec::join(
        exec::parallel_default(),
        || component(Subsystem::One),
        || component(Subsystem::Two),
    );
    let (sup_1k, sup_2k) = (r1?, r2?);
    let m = sync_product(&sup_1k, &sup_2k);

    let nonconflicting = checks::is_nonconflicting(&sup_1k, &sup_2k)?;
    let pk_m = p.project_k(&m);
    let m_controllable = is_controllable(&pk_m, p.gk(), &sigma_u)?;
    let ambient_k = match ambient_override {
        Some(c) => {
            let c = require_ambient_for_certificate(p, &m, c)?;
            p.project_k(&c)
        }
        None => pk_m.clone(),
    };
    let m_observable = is_relatively_observable(&pk_m, &ambient_k, p.gk(), sigma_o)?;

    let certified = nonconflicting.holds && m_controllable.holds && m_observable.holds;
    let mut notes = Vec::new();
    if certified {
        notes.push(
            "certified: M is conditionally controllable and conditionally observable and contains \
             the supremal conditionally controllable and conditionally strong relatively \
             observable sublanguage"
                .to_string(),
        );
    }
    // coordinator-part inclusion sanity: Pk(sup_ik) ⊆ sup_k
    for (name, g) in [("sup_cro_1k", &sup_1k), ("sup_cro_2k", &sup_2k)] {
        let incl = is_sublanguage(&p.project_k(g), &sup_k, LanguageKind::Marked)?;
        if !incl.holds {
            return Err(DesError::invalid(format!(
                "internal error: the coordinator part of {name} escapes sup_cro_k"
            )));
        }
    }
    notes.push("coordinator parts of both components lie inside sup_cro_k".to_string());

    let mut languages = BTreeMap::new();
    languages.insert("sup_cro_k".to_string(), sup_k);
    languages.insert("sup_cro_1k".to_string(), sup_1k);
    languages.insert("sup_cro_2k".to_string(), sup_2k);
    languages.insert("m".to_string(), m);
    Ok(SynthesisReport {
        pipeline: Pipeline::Cro,
        languages,
        hypotheses: vec![
            HypothesisVerdict {
                name: "components_nonconflicting".into(),
                verdict: nonconflicting,
            },
            HypothesisVerdict {
                name: "coordinator_part_controllable".into(),
                verdict: m_controllable,
            },
            HypothesisVerdict {
                name: "coordinator_part_relatively_observable".into(),
                verdict: m_observable,
            },
        ],
        certified,
        notes,
    })
}

fn require_ambient_for_certificate(
    p: &CoordinationProblem,
    m: &Generator,
    c: &Generator,
) -> Result<Generator, DesError> {
    let c = c.extend_alphabet(p.table.events()).map_err(|_| {
        DesError::invalid("the certificate ambient uses events outside sigma1 ∪ sigma2")
    })?;
    if let Some(w) = is_sublanguage(m, &c, LanguageKind::Marked)?.witness {
        return Err(DesError::InclusionViolated {
            what: "the synthesized composition".into(),
            of: "the certificate ambient".into(),
            witness: w.describe(),
        });
    }
    if let Some(w) =
        is_sublanguage(&c, &generated_as_marked(p.plant()), LanguageKind::Marked)?.witness
    {
        return Err(DesError::InclusionViolated {
            what: "the certificate ambient".into(),
            of: "the generated language of G1 ∥ G2 ∥ Gk".into(),
            witness: w.describe(),
        });
    }
    Ok(c)
}

/// A supervisor presented as its closed-loop target language plus the induced
/// control-pattern semantics: after an observation, the enabled set is all
/// uncontrollable events plus every controllable event some consistent
/// continuation keeps inside the closure.
#[derive(Debug, Clone)]
pub struct SupervisorRealization {
    language: Generator,
    observer_subsets: Vec<Vec<usize>>,
    observer_transitions: Vec<BTreeMap<Event, usize>>,
    uncontrollable: EventSet,
    controllable: EventSet,
    observable: EventSet,
}

impl SupervisorRealization {
    pub fn new(language: &Generator, table: &EventTable) -> Self {
        let closure = language.trim();
        let alphabet = closure.alphabet().clone();
        let observable = table.observable_of(&alphabet);
        let unobservable: Vec<Event> = alphabet
            .iter()
            .filter(|e| !observable.contains(*e))
            .cloned()
            .collect();

        let uclose = |seed: std::collections::BTreeSet<usize>| {
            let mut set = seed;
            let mut stack: Vec<usize> = set.iter().copied().collect();
            while let Some(q) = stack.pop() {
                for e in &unobservable {
                    if let Some(n) = closure.step(q, e) {
                        if set.insert(n) {
                            stack.push(n);
                        }
                    }
                }
            }
            set
        };

        let mut subsets: Vec<std::collections::BTreeSet<usize>> = Vec::new();
        let mut transitions: Vec<BTreeMap<Event, usize>> = Vec::new();
        let mut index: BTreeMap<std::collections::BTreeSet<usize>, usize> = BTreeMap::new();
        let start = uclose([closure.initial()].into_iter().collect());
        index.insert(start.clone(), 0);
        subsets.push(start);
        transitions.push(BTreeMap::new());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for e in observable.iter() {
                let moved: std::collections::BTreeSet<usize> = subsets[s]
                    .iter()
                    .filter_map(|&q| closure.step(q, e))
                    .collect();
                if moved.is_empty() {
                    continue;
                }
                let next = uclose(moved);
                let dst = match index.get(&next) {
                    Some(&d) => d,
                    None => {
                        let d = subsets.len();
                        index.insert(next.clone(), d);
                        subsets.push(next);
                        transitions.push(BTreeMap::new());
                        queue.push_back(d);
                        d
                    }
                };
                transitions[s].insert(e.clone(), dst);
            }
        }

        SupervisorRealization {
            uncontrollable: table.uncontrollable_of(&alphabet),
            controllable: table.controllable_of(&alphabet),
            observable,
            language: closure,
            observer_subsets: subsets.into_iter().map(|s| s.into_iter().collect()).collect(),
            observer_transitions: transitions,
        }
    }

    pub fn language(&self) -> &Generator {
        &self.language
    }

    pub fn observable(&self) -> &EventSet {
        &self.observable
    }

    /// Control pattern after an observation word, `None` when the observation
    /// cannot arise from the closed-loop language.
    pub fn enabled(&self, observation: &[Event]) -> Option<EventSet> {
        if self.language.is_empty_marked() {
            return None;
        }
        let mut s = 0usize;
        for e in observation {
            s = *self.observer_transitions[s].get(e)?;
        }
        let mut enabled = self.uncontrollable.clone();
        for e in &self.controllable {
            let some_continuation = self.observer_subsets[s]
                .iter()
                .any(|&q| self.language.step(q, e).is_some());
            if some_continuation {
                enabled.insert(e.clone());
            }
        }
        Some(enabled)
    }
}

/// One verified instance batch of an auxiliary composition/transitivity law.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub tested: usize,
    pub violations: usize,
    pub example_violation: Option<String>,
}

/// The auxiliary laws behind the pipeline correctness arguments, each checked
/// on hypothesis-filtered random instances. Any violation is a bug in the
/// library, never an acceptable outcome.
pub mod lemmas {
    use super::*;
    use crate::ops::equivalent;

    /// K ⊆ L ⊆ M, K normal w.r.t. L, L normal w.r.t. M ⟹ K normal w.r.t. M.
    /// Returns `None` when the hypotheses do not hold.
    pub fn normality_transitivity(
        k: &Generator,
        l: &Generator,
        m: &Generator,
        sigma_o: &EventSet,
    ) -> Result<Option<PropertyVerdict>, DesError> {
        let lp = l.prefix_closure();
        let mp = m.prefix_closure();
        let hyp = is_sublanguage(k, l, LanguageKind::Marked)?.holds
            && is_sublanguage(l, m, LanguageKind::Marked)?.holds
            && is_normal(k, &lp, sigma_o)?.holds
            && is_normal(l, &mp, sigma_o)?.holds;
        if !hyp {
            return Ok(None);
        }
        Ok(Some(is_normal(k, &mp, sigma_o)?))
    }

    /// Nonconflicting K1 ⊆ L1, K2 ⊆ L2 with each Ki normal w.r.t. the
    /// prefix-closed Li ⟹ K1 ∥ K2 normal w.r.t. L1 ∥ L2.
    pub fn normality_of_composition(
        k1: &Generator,
        l1: &Generator,
        k2: &Generator,
        l2: &Generator,
        sigma_o: &EventSet,
    ) -> Result<Option<PropertyVerdict>, DesError> {
        let hyp = is_sublanguage(k1, l1, LanguageKind::Marked)?.holds
            && is_sublanguage(k2, l2, LanguageKind::Marked)?.holds
            && l1.is_prefix_closed()
            && l2.is_prefix_closed()
            && is_normal(k1, l1, sigma_o)?.holds
            && is_normal(k2, l2, sigma_o)?.holds
            && checks::is_nonconflicting(k1, k2)?.holds;
        if !hyp {
            return Ok(None);
        }
        let product_k = sync_product(k1, k2);
        let product_l = sync_product(l1, l2);
        Ok(Some(is_normal(&product_k, &product_l, sigma_o)?))
    }

    /// Nonconflicting Ki ⊆ Li controllable w.r.t. the prefix-closed Li ⟹
    /// K1 ∥ K2 controllable w.r.t. L1 ∥ L2.
    pub fn controllability_of_composition(
        k1: &Generator,
        l1: &Generator,
        k2: &Generator,
        l2: &Generator,
        sigma_u: &EventSet,
    ) -> Result<Option<PropertyVerdict>, DesError> {
        let hyp = is_sublanguage(k1, l1, LanguageKind::Marked)?.holds
            && is_sublanguage(k2, l2, LanguageKind::Marked)?.holds
            && l1.is_prefix_closed()
            && l2.is_prefix_closed()
            && is_controllable(k1, l1, sigma_u)?.holds
            && is_controllable(k2, l2, sigma_u)?.holds
            && checks::is_nonconflicting(k1, k2)?.holds;
        if !hyp {
            return Ok(None);
        }
        let product_k = sync_product(k1, k2);
        let product_l = sync_product(l1, l2);
        Ok(Some(is_controllable(&product_k, &product_l, sigma_u)?))
    }

    /// K ⊆ L ⊆ M, K controllable w.r.t. closure(L), L controllable w.r.t.
    /// closure(M) ⟹ K controllable w.r.t. closure(M).
    pub fn controllability_transitivity(
        k: &Generator,
        l: &Generator,
        m: &Generator,
        sigma_u: &EventSet,
    ) -> Result<Option<PropertyVerdict>, DesError> {
        let lp = l.prefix_closure();
        let mp = m.prefix_closure();
        let hyp = is_sublanguage(k, l, LanguageKind::Marked)?.holds
            && is_sublanguage(l, m, LanguageKind::Marked)?.holds
            && is_controllable(k, &lp, sigma_u)?.holds
            && is_controllable(l, &mp, sigma_u)?.holds;
        if !hyp {
            return Ok(None);
        }
        Ok(Some(is_controllable(k, &mp, sigma_u)?))
    }

    /// P1(A) ⊆ L1 and P2(A) ⊆ L2 ⟹ A ⊆ L1 ∥ L2.
    pub fn product_inclusion(
        a: &Generator,
        l1: &Generator,
        l2: &Generator,
    ) -> Result<Option<PropertyVerdict>, DesError> {
        let p1 = project(a, l1.alphabet());
        let p2 = project(a, l2.alphabet());
        let hyp = is_sublanguage(&p1.extend_alphabet(l1.alphabet())?, l1, LanguageKind::Marked)?
            .holds
            && is_sublanguage(&p2.extend_alphabet(l2.alphabet())?, l2, LanguageKind::Marked)?
                .holds;
        if !hyp {
            return Ok(None);
        }
        let product = sync_product(l1, l2);
        let lifted = a.extend_alphabet(product.alphabet())?;
        Ok(Some(is_sublanguage(&lifted, &product, LanguageKind::Marked)?))
    }

    /// For the partial-observation pipeline, the coordinator part of each
    /// component stays inside the coordinator-level language.
    pub fn coordinator_part_inclusion(
        p: &CoordinationProblem,
        report: &SynthesisReport,
    ) -> Result<PropertyVerdict, DesError> {
        for name in ["sup_cro_1k", "sup_cro_2k"] {
            let part = p.project_k(report.language(name));
            let v = is_sublanguage(&part, report.language("sup_cro_k"), LanguageKind::Marked)?;
            if !v.holds {
                return Ok(v);
            }
        }
        Ok(PropertyVerdict::pass())
    }

    /// Equality helper for lemma drivers.
    pub fn same(a: &Generator, b: &Generator) -> Result<bool, DesError> {
        Ok(equivalent(a, b, LanguageKind::Marked)?.holds)
    }
}

/// Runs every auxiliary law on seeded random instances until `per_lemma`
/// hypothesis-satisfying cases have been checked for each, and reports any
/// violation. Instance generation mixes full and partial observation so the
/// hypotheses are met both trivially and nontrivially.
pub fn lemma_suite(seed: u64, per_lemma: usize) -> Result<Vec<LemmaReport>, DesError> {
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::random::{
        random_generator, random_problem, random_sublanguage, GeneratorConfig, ProblemConfig,
    };
    use crate::synthesis::sup_controllable;

    let attempt_cap = per_lemma * 400;
    let mut reports = Vec::new();

    let full: EventSet = [Event::new("a"), Event::new("b"), Event::new("u")]
        .into_iter()
        .collect();
    let sigma_o_for = |rng: &mut ChaCha8Rng, alphabet: &EventSet| -> EventSet {
        if rng.gen_bool(0.4) {
            alphabet.clone()
        } else {
            alphabet.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect()
        }
    };
    let sigma_u_for = |rng: &mut ChaCha8Rng, alphabet: &EventSet| -> EventSet {
        alphabet.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect()
    };

    // K ⊆ L ⊆ M with both normality hypotheses; conclusion: K normal w.r.t. M
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e6f726d);
        let mut tested = 0usize;
        let mut violations = 0usize;
        let mut example = None;
        let mut attempts = 0usize;
        while tested < per_lemma && attempts < attempt_cap {
            attempts += 1;
            let m = generated_as_marked(&random_generator(
                &mut rng,
                &GeneratorConfig::tiny(full.clone()),
            ));
            let l = random_sublanguage(&mut rng, &m, 0.7);
            let k = random_sublanguage(&mut rng, &l, 0.7);
            let sigma_o = sigma_o_for(&mut rng, &full);
            if let Some(v) = lemmas::normality_transitivity(&k, &l, &m, &sigma_o)? {
                tested += 1;
                if !v.holds {
                    violations += 1;
                    example.get_or_insert_with(|| {
                        v.witness.map(|w| w.describe()).unwrap_or_default()
                    });
                }
            }
        }
        reports.push(LemmaReport {
            lemma: "normality_transitivity",
            tested,
            violations,
            example_violation: example,
        });
    }

    // nonconflicting normal components compose to a normal language
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f6d70);
        let a1: EventSet = [Event::new("a"), Event::new("u")].into_iter().collect();
        let a2: EventSet = [Event::new("b"), Event::new("u")].into_iter().collect();
        let mut tested = 0usize;
        let mut violations = 0usize;
        let mut example = None;
        let mut attempts = 0usize;
        while tested < per_lemma && attempts < attempt_cap {
            attempts += 1;
            let l1 = generated_as_marked(&random_generator(
                &mut rng,
                &GeneratorConfig::tiny(a1.clone()),
            ));
            let l2 = generated_as_marked(&random_generator(
                &mut rng,
                &GeneratorConfig::tiny(a2.clone()),
            ));
            let k1 = random_sublanguage(&mut rng, &l1, 0.7);
            let k2 = random_sublanguage(&mut rng, &l2, 0.7);
            let sigma_o = sigma_o_for(&mut rng, &full);
            if let Some(v) = lemmas::normality_of_composition(&k1, &l1, &k2, &l2, &sigma_o)? {
                tested += 1;
                if !v.holds {
                    violations += 1;
                    example.get_or_insert_with(|| {
                        v.witness.map(|w| w.describe()).unwrap_or_default()
                    });
                }
            }
        }
        reports.push(LemmaReport {
            lemma: "normality_of_composition",
            tested,
            violations,
            example_violation: example,
        });
    }

    // nonconflicting controllable components compose to a controllable language
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x66656e67);
        let a1: EventSet = [Event::new("a"), Event::new("u")].into_iter().collect();
        let a2: EventSet = [Event::new("b"), Event::new("u")].into_iter().collect();
        let mut tested = 0usize;
        let mut violations = 0usize;
        let mut example = None;
        let mut attempts = 0usize;
        while tested < per_lemma && attempts < attempt_cap {
            attempts += 1;
            let l1 = generated_as_marked(&random_generator(
                &mut rng,
                &GeneratorConfig::tiny(a1.clone()),
            ));
            let l2 = generated_as_marked(&random_generator(
                &mut rng,
                &GeneratorConfig::tiny(a2.clone()),
            ));
            let sigma_u: EventSet = {
                let mut s = sigma_u_for(&mut rng, &a1);
                s.extend(sigma_u_for(&mut rng, &a2));
                s
            };
            // controllable components by construction
            let k1 = sup_controllable(&random_sublanguage(&mut rng, &l1, 0.7), &l1, &sigma_u)?
                .language;
            let k2 = sup_controllable(&random_sublanguage(&mut rng, &l2, 0.7), &l2, &sigma_u)?
                .language;
            if let Some(v) =
                lemmas::controllability_of_composition(&k1, &l1, &k2, &l2, &sigma_u)?
            {
                tested += 1;
                if !v.holds {
                    violations += 1;
                    example.get_or_insert_with(|| {
                        v.witness.map(|w| w.describe()).unwrap_or_default()
                    });
                }
            }
        }
        reports.push(LemmaReport {
            lemma: "controllability_of_composition",
            tested,
            violations,
            example_violation: example,
        });
    }

    // controllability is transitive along K ⊆ L ⊆ M
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7472616e);
        let mut tested = 0usize;
        let mut violations = 0usize;
        let mut example = None;
        let mut attempts = 0usize;
        while tested < per_lemma && attempts < attempt_cap {
            attempts += 1;
            let m = generated_as_marked(&random_generator(
                &mut rng,
                &GeneratorConfig::tiny(full.clone()),
            ));
            let sigma_u = sigma_u_for(&mut rng, &full);
            let l = sup_controllable(&random_sublanguage(&mut rng, &m, 0.75), &m, &sigma_u)?
                .language;
            let k = if l.is_empty_marked() {
                l.clone()
            } else {
                sup_controllable(
                    &random_sublanguage(&mut rng, &l, 0.75),
                    &l.prefix_closure(),
                    &sigma_u,
                )?
                .language
            };
            if let Some(v) = lemmas::controllability_transitivity(&k, &l, &m, &sigma_u)? {
                tested += 1;
                if !v.holds {
                    violations += 1;
                    example.get_or_insert_with(|| {
                        v.witness.map(|w| w.describe()).unwrap_or_default()
                    });
                }
            }
        }
        reports.push(LemmaReport {
            lemma: "controllability_transitivity",
            tested,
            violations,
            example_violation: example,
        });
    }

    // P1(A) ⊆ L1 and P2(A) ⊆ L2 imply A ⊆ L1 ∥ L2
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x696e636c);
        let a1: EventSet = [Event::new("a"), Event::new("u")].into_iter().collect();
        let a2: EventSet = [Event::new("b"), Event::new("u")].into_iter().collect();
        let mut tested = 0usize;
        let mut violations = 0usize;
        let mut example = None;
        let mut attempts = 0usize;
        while tested < per_lemma && attempts < attempt_cap {
            attempts += 1;
            let a = random_generator(&mut rng, &GeneratorConfig::tiny(full.clone()));
            let l1 = crate::ops::language_union(
                &project(&a, &a1).extend_alphabet(&a1)?,
                &random_generator(&mut rng, &GeneratorConfig::tiny(a1.clone())),
            )?;
            let l2 = crate::ops::language_union(
                &project(&a, &a2).extend_alphabet(&a2)?,
                &random_generator(&mut rng, &GeneratorConfig::tiny(a2.clone())),
            )?;
            if let Some(v) = lemmas::product_inclusion(&a, &l1, &l2)? {
                tested += 1;
                if !v.holds {
                    violations += 1;
                    example.get_or_insert_with(|| {
                        v.witness.map(|w| w.describe()).unwrap_or_default()
                    });
                }
            }
        }
        reports.push(LemmaReport {
            lemma: "product_inclusion",
            tested,
            violations,
            example_violation: example,
        });
    }

    // on every partial-observation synthesis run, coordinator parts stay
    // inside the coordinator-level language
    {
        let mut tested = 0usize;
        let mut violations = 0usize;
        let mut example = None;
        let mut attempts = 0usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f6f72);
        let cfg = ProblemConfig {
            decomposable: true,
            ..ProblemConfig::default()
        };
        while tested < per_lemma && attempts < attempt_cap {
            attempts += 1;
            let p = match random_problem(&mut rng, &cfg) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let report = synthesize_cro(&p, None)?;
            let v = lemmas::coordinator_part_inclusion(&p, &report)?;
            tested += 1;
            if !v.holds {
                violations += 1;
                example.get_or_insert_with(|| v.witness.map(|w| w.describe()).unwrap_or_default());
            }
        }
        reports.push(LemmaReport {
            lemma: "coordinator_part_inclusion",
            tested,
            violations,
            example_violation: example,
        });
    }

    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::event_set;
    use crate::fixtures::{
        closed_lang, conflicting_components_demo, lang, partial_observation_demo,
    };
    use crate::oracle::enumerate;
    use crate::words::word_set;

    fn marked_words(g: &Generator, h: usize) -> crate::words::WordSet {
        enumerate(g, h, LanguageKind::Marked).words
    }

    #[test]
    fn decomposability_of_the_demo_specifications() {
        let demo = partial_observation_demo();
        let t = demo.problem.table();
        assert!(is_conditionally_decomposable(&demo.union, t).unwrap().holds);
        assert!(is_conditionally_decomposable(&demo.k1, t).unwrap().holds);
        assert!(is_conditionally_decomposable(&demo.k2, t).unwrap().holds);
    }

    #[test]
    fn full_coordinator_alphabet_always_decomposes() {
        let table = EventTable::new(
            event_set(["a", "b"]),
            EventSet::new(),
            EventSet::new(),
        )
        .unwrap()
        .with_decomposition(event_set(["a"]), event_set(["b"]), event_set(["a", "b"]))
        .unwrap();
        let k = lang(&["a", "b"], &["a.b", "b.a.b"]);
        assert!(is_conditionally_decomposable(&k, &table).unwrap().holds);
    }

    #[test]
    fn shuffled_word_outside_the_language_is_the_witness() {
        let table = EventTable::new(event_set(["a", "b"]), EventSet::new(), EventSet::new())
            .unwrap()
            .with_decomposition(event_set(["a"]), event_set(["b"]), EventSet::new())
            .unwrap();
        let k = lang(&["a", "b"], &["a.b"]);
        let v = is_conditionally_decomposable(&k, &table).unwrap();
        assert!(!v.holds);
        match v.witness.unwrap() {
            Witness::Word { word, .. } => {
                assert_eq!(word, crate::words::word(["b", "a"]));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn greedy_extension_restores_decomposability() {
        let table = EventTable::new(event_set(["a", "b"]), EventSet::new(), EventSet::new())
            .unwrap()
            .with_decomposition(event_set(["a"]), event_set(["b"]), EventSet::new())
            .unwrap();
        let k = lang(&["a", "b"], &["a.b"]);
        let extended = extend_coordinator_alphabet(&k, &table).unwrap();
        assert!(extended.is_subset(&event_set(["a", "b"])));
        assert!(!extended.is_empty());
        let t2 = table
            .clone()
            .with_decomposition(event_set(["a"]), event_set(["b"]), extended)
            .unwrap();
        assert!(is_conditionally_decomposable(&k, &t2).unwrap().holds);
        assert!(
            is_conditionally_decomposable(&k.prefix_closure(), &t2)
                .unwrap()
                .holds
        );

        // already decomposable: unchanged
        let demo = partial_observation_demo();
        let unchanged =
            extend_coordinator_alphabet(demo.problem.spec(), demo.problem.table()).unwrap();
        assert_eq!(&unchanged, demo.problem.table().alphabet_k());

        // full coordinator alphabet: vacuously unchanged
        let full = EventTable::new(event_set(["a", "b"]), EventSet::new(), EventSet::new())
            .unwrap()
            .with_decomposition(event_set(["a"]), event_set(["b"]), event_set(["a", "b"]))
            .unwrap();
        let same = extend_coordinator_alphabet(&k, &full).unwrap();
        assert_eq!(same, event_set(["a", "b"]));
    }

    #[test]
    fn the_canonical_coordinator_has_the_projected_language() {
        let demo = partial_observation_demo();
        // Pk(G1) ∥ Pk(G2) over {τ} generates {ε, τ}
        assert_eq!(
            marked_words(demo.problem.gk(), 3),
            word_set(["", "tau"])
        );
    }

    #[test]
    fn empty_shared_alphabet_gives_the_neutral_coordinator() {
        let table = EventTable::new(event_set(["a", "b"]), EventSet::new(), EventSet::new())
            .unwrap()
            .with_decomposition(event_set(["a"]), event_set(["b"]), EventSet::new())
            .unwrap();
        let g1 = closed_lang(&["a"], &["a"]);
        let g2 = closed_lang(&["b"], &["b"]);
        let gk = make_coordinator(&g1, &g2, &table).unwrap();
        assert!(gk.alphabet().is_empty());
        assert_eq!(marked_words(&gk, 2), word_set([""]));
    }

    #[test]
    fn the_coordinator_never_affects_the_plant() {
        let demo = partial_observation_demo();
        let p = &demo.problem;
        let two = sync_product(p.g1(), p.g2());
        let three = sync_product(&two, p.gk());
        assert!(crate::ops::equivalent(&three, &two, LanguageKind::Marked)
            .unwrap()
            .holds);
        assert!(crate::ops::equivalent(&three, &two, LanguageKind::Generated)
            .unwrap()
            .holds);
    }

    #[test]
    fn conditional_controllability_is_trivial_without_uncontrollable_events() {
        let demo = partial_observation_demo();
        let v = is_conditionally_controllable(&demo.problem).unwrap();
        assert!(v.holds);
        assert_eq!(v.components.len(), 3);
    }

    #[test]
    fn conditional_closedness_of_the_prefix_closed_variant() {
        let demo = partial_observation_demo();
        // prefix-closed specification against prefix-closed plants
        let closed_spec = demo.union.prefix_closure();
        let p = demo.problem.with_spec(closed_spec).unwrap();
        assert!(is_conditionally_closed(&p).unwrap().holds);
    }

    #[test]
    fn component_specifications_are_weakly_observable_but_their_union_is_not() {
        let demo = partial_observation_demo();
        let c = &demo.union;

        let p1 = demo.problem.with_spec(demo.k1.clone()).unwrap();
        assert!(is_conditionally_c_observable(&p1, c).unwrap().holds);

        let p2 = demo.problem.with_spec(demo.k2.clone()).unwrap();
        assert!(is_conditionally_c_observable(&p2, c).unwrap().holds);

        let v = is_conditionally_c_observable(&demo.problem, c).unwrap();
        assert!(!v.holds);
        let failure = v.first_failure().unwrap();
        assert_eq!(failure.component, ComponentId::Subsystem1);
        match failure.verdict.witness.as_ref().unwrap() {
            Witness::Pair { s, s_prime, sigma, .. } => {
                assert!(s.is_empty());
                assert_eq!(s_prime, &crate::words::word(["tau"]));
                assert_eq!(sigma, &Event::new("a"));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn strong_variant_verdicts_on_the_demo() {
        let demo = partial_observation_demo();
        let c = &demo.union;

        let p1 = demo.problem.with_spec(demo.k1.clone()).unwrap();
        assert!(!is_conditionally_strong_c_observable(&p1, c).unwrap().holds);

        let p2 = demo.problem.with_spec(demo.k2.clone()).unwrap();
        assert!(is_conditionally_strong_c_observable(&p2, c).unwrap().holds);

        // ambient equal to the spec under full observation is trivially fine
        let full_table = EventTable::new(
            event_set(["a", "tau"]),
            event_set(["a", "tau"]),
            event_set(["a", "tau"]),
        )
        .unwrap()
        .with_decomposition(
            event_set(["a", "tau"]),
            event_set(["tau"]),
            event_set(["tau"]),
        )
        .unwrap();
        let p_full = CoordinationProblem::new(
            demo.problem.g1().clone(),
            demo.problem.g2().clone(),
            None,
            demo.union.clone(),
            full_table,
            DecomposabilityPolicy::Enforce,
        )
        .unwrap();
        assert!(is_conditionally_strong_c_observable(&p_full, &demo.union)
            .unwrap()
            .holds);
    }

    #[test]
    fn conditional_normality_verdicts_on_the_demo() {
        let demo = partial_observation_demo();
        let p2 = demo.problem.with_spec(demo.k2.clone()).unwrap();
        assert!(is_conditionally_normal(&p2).unwrap().holds);

        // K1 = {a} already fails at the coordinator clause: Pk(K1) = {ε} is
        // not normal against L(Gk) = closure{τ} with no observable events.
        let p1 = demo.problem.with_spec(demo.k1.clone()).unwrap();
        let v = is_conditionally_normal(&p1).unwrap();
        assert!(!v.holds);

        // full observation is always conditionally normal
        let full_table = EventTable::new(
            event_set(["a", "tau"]),
            event_set(["a", "tau"]),
            event_set(["a", "tau"]),
        )
        .unwrap()
        .with_decomposition(
            event_set(["a", "tau"]),
            event_set(["tau"]),
            event_set(["tau"]),
        )
        .unwrap();
        let p_full = CoordinationProblem::new(
            demo.problem.g1().clone(),
            demo.problem.g2().clone(),
            None,
            demo.k1.clone(),
            full_table,
            DecomposabilityPolicy::Skip,
        )
        .unwrap();
        assert!(is_conditionally_normal(&p_full).unwrap().holds);
    }

    #[test]
    fn the_conditionally_observable_union_fails_at_subsystem_one() {
        let demo = partial_observation_demo();
        let v = is_conditionally_observable(&demo.problem).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.first_failure().unwrap().component,
            ComponentId::Subsystem1
        );
    }

    #[test]
    fn distributed_partial_observation_synthesis_on_the_demo() {
        let demo = partial_observation_demo();
        let report = synthesize_cro(&demo.problem, None).unwrap();
        assert!(report.certified);
        assert_eq!(marked_words(report.language("sup_cro_k"), 3), word_set(["", "tau"]));
        assert_eq!(marked_words(report.language("sup_cro_1k"), 3), word_set(["tau"]));
        assert_eq!(
            marked_words(report.language("sup_cro_2k"), 3),
            word_set(["", "tau"])
        );
        assert_eq!(marked_words(report.result(), 3), word_set(["tau"]));

        // certification survives a direct re-check of the conditional properties
        let as_spec = demo.problem.with_spec(report.result().clone()).unwrap();
        assert!(is_conditionally_controllable(&as_spec).unwrap().holds);
        assert!(is_conditionally_observable(&as_spec).unwrap().holds);

        // coordinator parts stay inside the coordinator-level language
        assert!(lemmas::coordinator_part_inclusion(&demo.problem, &report)
            .unwrap()
            .holds);
    }

    #[test]
    fn distributed_controllability_synthesis_on_the_demo() {
        let demo = partial_observation_demo();
        let report = synthesize_cc(&demo.problem).unwrap();
        assert!(report.certified);
        // with every event controllable the composition is the specification
        assert!(crate::ops::equivalent(
            report.result(),
            demo.problem.spec(),
            LanguageKind::Marked
        )
        .unwrap()
        .holds);
    }

    #[test]
    fn full_observation_synthesis_returns_the_specification() {
        // with everything observable and controllable the pipelines cannot
        // prune anything: M = K, certified
        let demo = partial_observation_demo();
        let full_table = EventTable::new(
            event_set(["a", "tau"]),
            event_set(["a", "tau"]),
            event_set(["a", "tau"]),
        )
        .unwrap()
        .with_decomposition(
            event_set(["a", "tau"]),
            event_set(["tau"]),
            event_set(["tau"]),
        )
        .unwrap();
        let p = CoordinationProblem::new(
            demo.problem.g1().clone(),
            demo.problem.g2().clone(),
            None,
            demo.union.clone(),
            full_table,
            DecomposabilityPolicy::Enforce,
        )
        .unwrap();
        let report = synthesize_cro(&p, None).unwrap();
        assert!(report.certified);
        assert!(crate::ops::equivalent(report.result(), p.spec(), LanguageKind::Marked)
            .unwrap()
            .holds);
    }

    #[test]
    fn conflicting_components_leave_the_synthesis_uncertified() {
        let p = conflicting_components_demo();
        let report = synthesize_cc(&p).unwrap();
        assert!(!report.certified);
        let failed: Vec<&str> = report
            .hypotheses
            .iter()
            .filter(|h| !h.verdict.holds)
            .map(|h| h.name.as_str())
            .collect();
        assert_eq!(failed, vec!["components_nonconflicting"]);
        assert_eq!(
            marked_words(report.language("sup_c_1k"), 3),
            word_set(["b.a"])
        );
        assert_eq!(
            marked_words(report.language("sup_c_2k"), 3),
            word_set(["a.b"])
        );

        let cro = synthesize_cro(&p, None).unwrap();
        assert!(!cro.certified);
    }

    #[test]
    fn supervisor_realization_control_patterns() {
        let demo = partial_observation_demo();
        let report = synthesize_cro(&demo.problem, None).unwrap();
        // component two: language {ε, τ} over {τ}, τ controllable, nothing observable
        let s2 = SupervisorRealization::new(report.language("sup_cro_2k"), demo.problem.table());
        let enabled = s2.enabled(&[]).unwrap();
        assert!(enabled.contains(&Event::new("tau")));
        assert_eq!(s2.enabled(&[Event::new("a")]), None);

        // component one: language {τ} over {a, τ}; a is never enabled
        let s1 = SupervisorRealization::new(report.language("sup_cro_1k"), demo.problem.table());
        let enabled = s1.enabled(&[]).unwrap();
        assert!(enabled.contains(&Event::new("tau")));
        assert!(!enabled.contains(&Event::new("a")));
    }

    #[test]
    fn certificate_ambient_override_is_validated() {
        let demo = partial_observation_demo();
        // the union itself is a legal ambient for the certificate
        let report = synthesize_cro(&demo.problem, Some(&demo.union)).unwrap();
        assert!(report.certified);

        // an ambient that does not contain M is an input error
        let too_small = lang(&["a", "tau"], &[]);
        assert!(synthesize_cro(&demo.problem, Some(&too_small)).is_err());
    }
}

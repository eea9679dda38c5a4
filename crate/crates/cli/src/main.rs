//! `coordctl` — checks and distributed synthesis for coordinated supervisory
//! control of discrete-event systems under partial observation.
//!
//! Exit codes: 0 pass/certified/agreement, 1 a checked property fails (the
//! report carries a witness), 2 input error, 3 synthesis completed but the
//! certification hypotheses failed, 4 the oracle comparison found a
//! disagreement (a bug).

mod bundle;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};

use coordctl_core::checks::{
    is_controllable, is_lm_closed, is_nonconflicting, is_normal, is_observable_with,
    is_relatively_observable, supervisor_exists, CheckProperty, SigmaQuantification,
};
use coordctl_core::coordination::{
    is_conditionally_c_observable, is_conditionally_closed, is_conditionally_controllable,
    is_conditionally_decomposable, is_conditionally_normal, is_conditionally_observable,
    is_conditionally_strong_c_observable, synthesize_cc, synthesize_cro, ConditionalVerdict,
    DecomposabilityPolicy, HypothesisVerdict,
};
use coordctl_core::exec::parallel_default;
use coordctl_core::format::{parse_automaton, serialize_automaton};
use coordctl_core::oracle::{self, CoordinationSnapshot, SupremalFamily};
use coordctl_core::random::{random_ambient, random_problem, run_seeded, ProblemConfig};
use coordctl_core::witness::PropertyVerdict;
use coordctl_core::{Generator, LanguageKind};

use bundle::{load_bundle, write_problem_bundle, LoadedBundle};
use report::{print_json, versions, CampaignReport, CheckReport, OracleComparison, SynthReport};

#[derive(Parser)]
#[command(name = "coordctl", version, about = "coordination supervisory control toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one property check against a problem bundle.
    Check(CheckArgs),
    /// Run a distributed synthesis pipeline and certify its hypotheses.
    Synth(SynthArgs),
    /// Compare the production implementation against the bounded brute-force
    /// oracle, on a bundle or on a seeded random campaign.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Property name, e.g. `controllable` or `conditionally-c-observable`.
    property: String,
    #[arg(long)]
    bundle: PathBuf,
    /// Ambient language file for the relative-observability properties
    /// (falls back to the bundle's `c:` role).
    #[arg(long)]
    ambient: Option<PathBuf>,
    /// Quantify observability over the whole alphabet instead of the
    /// controllable events.
    #[arg(long)]
    sigma_all: bool,
}

#[derive(Args)]
struct SynthArgs {
    /// Pipeline: `cc` (controllability only) or `cro` (partial observation).
    pipeline: String,
    #[arg(long)]
    bundle: PathBuf,
    /// Output directory for the language files and `report.json`.
    #[arg(long)]
    out: PathBuf,
    /// Certificate ambient for the `cro` pipeline (defaults to the
    /// composition itself).
    #[arg(long)]
    ambient: Option<PathBuf>,
    /// Downgrade a non-decomposable specification closure to a warning.
    #[arg(long)]
    closure_warning: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    bundle: Option<PathBuf>,
    /// Property to compare; a campaign covers all conditional checks.
    #[arg(long)]
    property: Option<String>,
    /// Enumeration horizon; defaults to the product of the state counts + 1,
    /// clamped to 14.
    #[arg(long)]
    horizon: Option<usize>,
    /// Run a seeded random campaign with this many instances.
    #[arg(long)]
    campaign: Option<usize>,
    /// Campaign seed; required with `--campaign`.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for regression bundles of any disagreeing instance.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Deliberately flip one production verdict (test hook).
    #[arg(long, hide = true)]
    inject_mutant: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_ambient(b: &LoadedBundle, path: &Option<PathBuf>) -> Result<Generator> {
    if let Some(path) = path {
        let text = fs::read_to_string(path)
            .map_err(|e| anyhow!("cannot read ambient `{}`: {e}", path.display()))?;
        return Ok(parse_automaton(&text)
            .map_err(|e| anyhow!("{}: {e}", path.display()))?
            .generator);
    }
    b.role("c").cloned().map_err(|_| {
        anyhow!("this property needs an ambient language: add a `c:` role or pass --ambient")
    })
}

fn conditional_report(property: &str, v: ConditionalVerdict) -> (u8, CheckReport) {
    let witness = v.first_failure().and_then(|c| c.verdict.witness.clone());
    let code = if v.holds { 0 } else { 1 };
    (
        code,
        CheckReport {
            property: property.to_string(),
            holds: v.holds,
            witness,
            components: v.components,
            conditions: Vec::new(),
            notes: Vec::new(),
            versions: versions(),
        },
    )
}

fn simple_report(property: &str, v: PropertyVerdict) -> (u8, CheckReport) {
    let code = if v.holds { 0 } else { 1 };
    (
        code,
        CheckReport {
            property: property.to_string(),
            holds: v.holds,
            witness: v.witness,
            components: Vec::new(),
            conditions: Vec::new(),
            notes: Vec::new(),
            versions: versions(),
        },
    )
}

fn cmd_check(args: CheckArgs) -> Result<u8> {
    let property: CheckProperty = args.property.parse()?;
    let b = load_bundle(&args.bundle)?;
    let table = &b.table;

    let (code, doc) = match property {
        CheckProperty::Controllable => {
            let v = is_controllable(b.role("k")?, &b.plant()?, &table.uncontrollable())?;
            simple_report(property.name(), v)
        }
        CheckProperty::Observable => {
            let quant = if args.sigma_all {
                SigmaQuantification::AllEvents
            } else {
                SigmaQuantification::ControllableOnly
            };
            let v = is_observable_with(
                b.role("k")?,
                &b.plant()?,
                table.observable(),
                table.controllable(),
                quant,
            )?;
            simple_report(property.name(), v)
        }
        CheckProperty::Normal => {
            let v = is_normal(b.role("k")?, &b.plant()?, table.observable())?;
            simple_report(property.name(), v)
        }
        CheckProperty::RelativelyObservable => {
            let ambient = load_ambient(&b, &args.ambient)?;
            let v = is_relatively_observable(
                b.role("k")?,
                &ambient,
                &b.plant()?,
                table.observable(),
            )?;
            simple_report(property.name(), v)
        }
        CheckProperty::Nonconflicting => {
            let (x, y) = match (b.optional_role("l1"), b.optional_role("l2")) {
                (Some(x), Some(y)) => (x, y),
                _ => (b.role("g1")?, b.role("g2")?),
            };
            let v = is_nonconflicting(x, y)?;
            simple_report(property.name(), v)
        }
        CheckProperty::LmClosed => {
            let v = is_lm_closed(b.role("k")?, &b.plant()?)?;
            simple_report(property.name(), v)
        }
        CheckProperty::SupervisorExists => {
            let bundle_verdicts = supervisor_exists(
                b.role("k")?,
                &b.plant()?,
                &table.uncontrollable(),
                table.observable(),
                table.controllable(),
            )?;
            let conditions = vec![
                HypothesisVerdict {
                    name: "controllable".into(),
                    verdict: bundle_verdicts.controllable,
                },
                HypothesisVerdict {
                    name: "lm_closed".into(),
                    verdict: bundle_verdicts.lm_closed,
                },
                HypothesisVerdict {
                    name: "observable".into(),
                    verdict: bundle_verdicts.observable,
                },
            ];
            let witness = conditions
                .iter()
                .find(|c| !c.verdict.holds)
                .and_then(|c| c.verdict.witness.clone());
            let code = if bundle_verdicts.exists { 0 } else { 1 };
            (
                code,
                CheckReport {
                    property: property.name().to_string(),
                    holds: bundle_verdicts.exists,
                    witness,
                    components: Vec::new(),
                    conditions,
                    notes: Vec::new(),
                    versions: versions(),
                },
            )
        }
        CheckProperty::ConditionallyDecomposable => {
            let v = is_conditionally_decomposable(b.role("k")?, table)?;
            simple_report(property.name(), v)
        }
        CheckProperty::ConditionallyControllable => {
            let p = b.problem(DecomposabilityPolicy::Skip)?;
            conditional_report(property.name(), is_conditionally_controllable(&p)?)
        }
        CheckProperty::ConditionallyObservable => {
            let p = b.problem(DecomposabilityPolicy::Skip)?;
            conditional_report(property.name(), is_conditionally_observable(&p)?)
        }
        CheckProperty::ConditionallyClosed => {
            let p = b.problem(DecomposabilityPolicy::Skip)?;
            conditional_report(property.name(), is_conditionally_closed(&p)?)
        }
        CheckProperty::ConditionallyNormal => {
            let p = b.problem(DecomposabilityPolicy::Skip)?;
            conditional_report(property.name(), is_conditionally_normal(&p)?)
        }
        CheckProperty::ConditionallyCObservable => {
            let p = b.problem(DecomposabilityPolicy::Skip)?;
            let ambient = load_ambient(&b, &args.ambient)?;
            conditional_report(property.name(), is_conditionally_c_observable(&p, &ambient)?)
        }
        CheckProperty::ConditionallyStrongCObservable => {
            let p = b.problem(DecomposabilityPolicy::Skip)?;
            let ambient = load_ambient(&b, &args.ambient)?;
            conditional_report(
                property.name(),
                is_conditionally_strong_c_observable(&p, &ambient)?,
            )
        }
    };
    print_json(&doc);
    Ok(code)
}

fn cmd_synth(args: SynthArgs) -> Result<u8> {
    let b = load_bundle(&args.bundle)?;
    let policy = if args.closure_warning {
        DecomposabilityPolicy::WarnOnClosure
    } else {
        DecomposabilityPolicy::Enforce
    };
    let p = b.problem(policy)?;
    let ambient = match &args.ambient {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| anyhow!("cannot read ambient `{}`: {e}", path.display()))?;
            Some(
                parse_automaton(&text)
                    .map_err(|e| anyhow!("{}: {e}", path.display()))?
                    .generator,
            )
        }
        None => None,
    };

    let mut result = match args.pipeline.as_str() {
        "cc" => synthesize_cc(&p)?,
        "cro" => synthesize_cro(&p, ambient.as_ref())?,
        other => return Err(anyhow!("unknown pipeline `{other}` (expected `cc` or `cro`)")),
    };
    result.notes.extend(p.warnings().iter().cloned());

    fs::create_dir_all(&args.out)?;
    let mut files = BTreeMap::new();
    for (name, lang) in &result.languages {
        let file = format!("{name}.aut");
        fs::write(args.out.join(&file), serialize_automaton(lang, Some(p.table())))?;
        files.insert(name.clone(), file);
    }
    let doc = SynthReport {
        pipeline: result.pipeline,
        languages: files,
        hypotheses: result.hypotheses,
        certified: result.certified,
        notes: result.notes,
        versions: versions(),
    };
    let json = serde_json::to_string_pretty(&doc)?;
    fs::write(args.out.join("report.json"), format!("{json}\n"))?;
    println!("{json}");
    Ok(if result.certified { 0 } else { 3 })
}

fn default_horizon(states: &[usize]) -> usize {
    let product: usize = states
        .iter()
        .copied()
        .fold(1usize, |a, b| a.saturating_mul(b.max(1)));
    product.saturating_add(1).clamp(4, 14)
}

fn cmd_oracle(args: OracleArgs) -> Result<u8> {
    if let Some(count) = args.campaign {
        let seed = args
            .seed
            .ok_or_else(|| anyhow!("--campaign requires --seed (no nondeterministic defaults)"))?;
        return oracle_campaign(count, seed, args.out, args.inject_mutant);
    }
    let bundle_path = args
        .bundle
        .as_ref()
        .ok_or_else(|| anyhow!("either --bundle or --campaign is required"))?;
    let property = args
        .property
        .as_deref()
        .ok_or_else(|| anyhow!("--property is required with --bundle"))?;
    let b = load_bundle(bundle_path)?;

    let mut doc = match compare_supremal(&b, property, args.horizon)? {
        Some(doc) => doc,
        None => compare_check(&b, property, args.horizon)?,
    };
    if args.inject_mutant {
        doc.production = !doc.production;
        doc.agree = doc.production == doc.oracle;
        doc.notes
            .push("production verdict flipped by --inject-mutant".into());
    }
    print_json(&doc);
    Ok(if doc.agree { 0 } else { 4 })
}

fn compare_check(
    b: &LoadedBundle,
    property: &str,
    horizon: Option<usize>,
) -> Result<OracleComparison> {
    let table = &b.table;
    let check: CheckProperty = property.parse()?;
    let (production, oracle_verdict, exact) = match check {
        CheckProperty::Controllable
        | CheckProperty::Observable
        | CheckProperty::Normal
        | CheckProperty::RelativelyObservable
        | CheckProperty::LmClosed
        | CheckProperty::SupervisorExists => {
            let k = b.role("k")?;
            let plant = b.plant()?;
            let h = horizon
                .unwrap_or_else(|| default_horizon(&[k.state_count(), plant.state_count()]));
            let kw = oracle::enumerate(k, h, LanguageKind::Marked);
            let lw = oracle::enumerate(&plant, h + 1, LanguageKind::Generated);
            let lm = oracle::enumerate(&plant, h + 1, LanguageKind::Marked);
            let exact = (kw.saturated && lw.saturated)
                || h >= default_horizon(&[k.state_count(), plant.state_count()]);
            let (prod, orac) = match check {
                CheckProperty::Controllable => (
                    is_controllable(k, &plant, &table.uncontrollable())?.holds,
                    oracle::controllable_words(&kw.words, &lw.words, &table.uncontrollable()).0,
                ),
                CheckProperty::Observable => (
                    is_observable_with(
                        k,
                        &plant,
                        table.observable(),
                        table.controllable(),
                        SigmaQuantification::ControllableOnly,
                    )?
                    .holds,
                    oracle::observable_words(
                        &kw.words,
                        &lw.words,
                        table.observable(),
                        table.controllable(),
                    )
                    .0,
                ),
                CheckProperty::Normal => (
                    is_normal(k, &plant, table.observable())?.holds,
                    oracle::normal_words(&kw.words, &lw.words, table.observable()).0,
                ),
                CheckProperty::RelativelyObservable => {
                    let ambient = load_ambient(b, &None)?;
                    let cw = oracle::enumerate(&ambient, h, LanguageKind::Marked);
                    (
                        is_relatively_observable(k, &ambient, &plant, table.observable())?.holds,
                        oracle::relatively_observable_words(
                            &kw.words,
                            &cw.words,
                            &lw.words,
                            table.observable(),
                            k.alphabet(),
                        )
                        .0,
                    )
                }
                CheckProperty::LmClosed => (
                    is_lm_closed(k, &plant)?.holds,
                    oracle::lm_closed_words(&kw.words, &lm.words).0,
                ),
                CheckProperty::SupervisorExists => {
                    let bundle_verdicts = supervisor_exists(
                        k,
                        &plant,
                        &table.uncontrollable(),
                        table.observable(),
                        table.controllable(),
                    )?;
                    let orac = oracle::controllable_words(
                        &kw.words,
                        &lw.words,
                        &table.uncontrollable(),
                    )
                    .0 && oracle::lm_closed_words(&kw.words, &lm.words).0
                        && oracle::observable_words(
                            &kw.words,
                            &lw.words,
                            table.observable(),
                            table.controllable(),
                        )
                        .0;
                    (bundle_verdicts.exists, orac)
                }
                _ => unreachable!(),
            };
            (prod, orac, exact)
        }
        CheckProperty::Nonconflicting => {
            let (x, y) = match (b.optional_role("l1"), b.optional_role("l2")) {
                (Some(x), Some(y)) => (x, y),
                _ => (b.role("g1")?, b.role("g2")?),
            };
            let h = horizon
                .unwrap_or_else(|| default_horizon(&[x.state_count(), y.state_count()]));
            let xw = oracle::enumerate(x, h, LanguageKind::Marked);
            let yw = oracle::enumerate(y, h, LanguageKind::Marked);
            (
                is_nonconflicting(x, y)?.holds,
                oracle::nonconflicting_words(&xw.words, x.alphabet(), &yw.words, y.alphabet()).0,
                xw.saturated && yw.saturated,
            )
        }
        CheckProperty::ConditionallyDecomposable => {
            let k = b.role("k")?;
            let h = horizon.unwrap_or_else(|| default_horizon(&[k.state_count()]));
            let kw = oracle::enumerate(k, h, LanguageKind::Marked);
            let a1k = table.alphabet_ik(coordctl_core::Subsystem::One);
            let a2k = table.alphabet_ik(coordctl_core::Subsystem::Two);
            let p1 = coordctl_core::words::project_words(&kw.words, &a1k);
            let p2 = coordctl_core::words::project_words(&kw.words, &a2k);
            let composed = oracle::sync_words(&p1, &a1k, &p2, &a2k);
            (
                is_conditionally_decomposable(k, table)?.holds,
                composed == kw.words,
                kw.saturated,
            )
        }
        _ => {
            let p = b.problem(DecomposabilityPolicy::Skip)?;
            let h = horizon.unwrap_or_else(|| {
                default_horizon(&[
                    p.g1().state_count(),
                    p.g2().state_count(),
                    p.gk().state_count(),
                ])
            });
            let snap = CoordinationSnapshot::capture(&p, h);
            let exact = snap.saturated;
            let (prod, orac) = match check {
                CheckProperty::ConditionallyControllable => (
                    is_conditionally_controllable(&p)?.holds,
                    oracle::conditionally_controllable_words(&snap, &snap.spec).0,
                ),
                CheckProperty::ConditionallyObservable => (
                    is_conditionally_observable(&p)?.holds,
                    oracle::conditionally_observable_words(&snap, &snap.spec).0,
                ),
                CheckProperty::ConditionallyClosed => (
                    is_conditionally_closed(&p)?.holds,
                    oracle::conditionally_closed_words(&snap, &snap.spec).0,
                ),
                CheckProperty::ConditionallyNormal => (
                    is_conditionally_normal(&p)?.holds,
                    oracle::conditionally_normal_words(&snap, &snap.spec).0,
                ),
                CheckProperty::ConditionallyCObservable => {
                    let ambient = load_ambient(b, &None)?;
                    let cw = oracle::enumerate(&ambient, h, LanguageKind::Marked);
                    (
                        is_conditionally_c_observable(&p, &ambient)?.holds,
                        oracle::conditionally_c_observable_words(&snap, &snap.spec, &cw.words).0,
                    )
                }
                CheckProperty::ConditionallyStrongCObservable => {
                    let ambient = load_ambient(b, &None)?;
                    let cw = oracle::enumerate(&ambient, h, LanguageKind::Marked);
                    (
                        is_conditionally_strong_c_observable(&p, &ambient)?.holds,
                        oracle::conditionally_strong_c_observable_words(
                            &snap, &snap.spec, &cw.words,
                        )
                        .0,
                    )
                }
                _ => unreachable!(),
            };
            (prod, orac, exact)
        }
    };

    Ok(OracleComparison {
        property: property.to_string(),
        production,
        oracle: oracle_verdict,
        exact,
        agree: production == oracle_verdict,
        notes: Vec::new(),
        versions: versions(),
    })
}

fn compare_supremal(
    b: &LoadedBundle,
    property: &str,
    horizon: Option<usize>,
) -> Result<Option<OracleComparison>> {
    let Ok(family) = property.parse::<SupremalFamily>() else {
        return Ok(None);
    };
    let table = &b.table;
    let parallel = parallel_default();
    match family {
        SupremalFamily::Controllable | SupremalFamily::ControllableAndRelativelyObservable => {
            let k = b.role("k")?;
            let plant = b.plant()?;
            let h = horizon
                .unwrap_or_else(|| default_horizon(&[k.state_count(), plant.state_count()]));
            let kw = oracle::enumerate(k, h, LanguageKind::Marked);
            let lw = oracle::enumerate(&plant, h + 1, LanguageKind::Generated);
            let (language, expected) = if family == SupremalFamily::Controllable {
                (
                    coordctl_core::synthesis::sup_controllable(
                        k,
                        &plant,
                        &table.uncontrollable(),
                    )?
                    .language,
                    oracle::supremal_controllable_words(
                        &kw.words,
                        &lw.words,
                        &table.uncontrollable(),
                        parallel,
                    )?,
                )
            } else {
                (
                    coordctl_core::synthesis::sup_c_and_ro(
                        k,
                        &plant,
                        &table.uncontrollable(),
                        table.observable(),
                    )?
                    .language,
                    oracle::supremal_c_and_ro_words(
                        &kw.words,
                        &lw.words,
                        &table.uncontrollable(),
                        table.observable(),
                        k.alphabet(),
                        parallel,
                    )?,
                )
            };
            let produced = oracle::enumerate(&language, h, LanguageKind::Marked);
            let agree = produced.words == expected;
            Ok(Some(OracleComparison {
                property: property.to_string(),
                production: true,
                oracle: agree,
                exact: kw.saturated && lw.saturated && produced.saturated,
                agree,
                notes: Vec::new(),
                versions: versions(),
            }))
        }
        SupremalFamily::CObservable => {
            let k = b.role("k")?;
            let ambient = load_ambient(b, &None)?;
            let plant = b.plant()?;
            let h = horizon
                .unwrap_or_else(|| default_horizon(&[k.state_count(), plant.state_count()]));
            let kw = oracle::enumerate(k, h, LanguageKind::Marked);
            let cw = oracle::enumerate(&ambient, h, LanguageKind::Marked);
            let lw = oracle::enumerate(&plant, h + 1, LanguageKind::Generated);
            let language = coordctl_core::synthesis::sup_relatively_observable(
                k,
                &ambient,
                &plant,
                table.observable(),
            )?
            .language;
            let expected = oracle::supremal_c_observable_words(
                &kw.words,
                &cw.words,
                &lw.words,
                table.observable(),
                k.alphabet(),
                parallel,
            )?;
            let produced = oracle::enumerate(&language, h, LanguageKind::Marked);
            let agree = produced.words == expected;
            Ok(Some(OracleComparison {
                property: property.to_string(),
                production: true,
                oracle: agree,
                exact: kw.saturated && lw.saturated && produced.saturated,
                agree,
                notes: Vec::new(),
                versions: versions(),
            }))
        }
        SupremalFamily::ConditionallyControllable
        | SupremalFamily::ConditionallyControllableStrongKObservable => {
            let p = b.problem(DecomposabilityPolicy::Enforce)?;
            let h = horizon.unwrap_or_else(|| {
                default_horizon(&[
                    p.g1().state_count(),
                    p.g2().state_count(),
                    p.gk().state_count(),
                ])
            });
            let snap = CoordinationSnapshot::capture(&p, h);
            let (report, expected) = if family == SupremalFamily::ConditionallyControllable {
                (
                    synthesize_cc(&p)?,
                    oracle::supremal_conditionally_controllable_words(&snap, parallel)?,
                )
            } else {
                (
                    synthesize_cro(&p, None)?,
                    oracle::supremal_conditionally_controllable_strong_k_observable_words(
                        &snap, parallel,
                    )?,
                )
            };
            if !report.certified {
                return Ok(Some(OracleComparison {
                    property: property.to_string(),
                    production: false,
                    oracle: false,
                    exact: snap.saturated,
                    agree: true,
                    notes: vec![
                        "synthesis is not certified; the composition is not compared".into()
                    ],
                    versions: versions(),
                }));
            }
            let produced = oracle::enumerate(report.result(), h, LanguageKind::Marked);
            // a certified controllability composition equals the supremal
            // language; a certified partial-observation composition contains
            // the supremal strong-observable language
            let agree = if family == SupremalFamily::ConditionallyControllable {
                produced.words == expected
            } else {
                expected.is_subset(&produced.words)
            };
            Ok(Some(OracleComparison {
                property: property.to_string(),
                production: true,
                oracle: agree,
                exact: snap.saturated && produced.saturated,
                agree,
                notes: Vec::new(),
                versions: versions(),
            }))
        }
    }
}

fn oracle_campaign(
    count: usize,
    seed: u64,
    out: Option<PathBuf>,
    inject_mutant: bool,
) -> Result<u8> {
    let cfg = ProblemConfig::default();
    let mut disagreements = Vec::new();
    // sequential execution keeps regression-bundle writes ordered
    let instances = run_seeded(count, seed, false, |i, mut rng| {
        let p = random_problem(&mut rng, &cfg)?;
        let ambient = random_ambient(&mut rng, &p);
        Ok::<_, coordctl_core::DesError>((i, p, ambient))
    });
    for instance in instances {
        let (i, p, ambient) = match instance {
            Ok(x) => x,
            Err(e) => return Err(anyhow!("instance generation failed: {e}")),
        };
        let snap = CoordinationSnapshot::capture(&p, 10);
        let ambient_words = oracle::enumerate(&ambient, 10, LanguageKind::Marked).words;

        let mut comparisons: Vec<(&str, bool, bool)> = vec![
            (
                "conditionally-controllable",
                is_conditionally_controllable(&p)?.holds,
                oracle::conditionally_controllable_words(&snap, &snap.spec).0,
            ),
            (
                "conditionally-observable",
                is_conditionally_observable(&p)?.holds,
                oracle::conditionally_observable_words(&snap, &snap.spec).0,
            ),
            (
                "conditionally-closed",
                is_conditionally_closed(&p)?.holds,
                oracle::conditionally_closed_words(&snap, &snap.spec).0,
            ),
            (
                "conditionally-normal",
                is_conditionally_normal(&p)?.holds,
                oracle::conditionally_normal_words(&snap, &snap.spec).0,
            ),
            (
                "conditionally-c-observable",
                is_conditionally_c_observable(&p, &ambient)?.holds,
                oracle::conditionally_c_observable_words(&snap, &snap.spec, &ambient_words).0,
            ),
            (
                "conditionally-strong-c-observable",
                is_conditionally_strong_c_observable(&p, &ambient)?.holds,
                oracle::conditionally_strong_c_observable_words(
                    &snap,
                    &snap.spec,
                    &ambient_words,
                )
                .0,
            ),
        ];
        if inject_mutant && i == 0 {
            comparisons[0].1 = !comparisons[0].1;
        }
        for (name, prod, orac) in comparisons {
            if prod != orac {
                disagreements.push(format!(
                    "instance {i}: {name}: production {prod}, oracle {orac}"
                ));
                if let Some(dir) = &out {
                    let written = write_problem_bundle(dir, &format!("disagreement_{i}"), &p)?;
                    disagreements.push(format!("  regression bundle: {}", written.display()));
                }
            }
        }
    }
    let agree = disagreements.is_empty();
    print_json(&CampaignReport {
        instances: count,
        seed,
        disagreements,
        versions: versions(),
    });
    Ok(if agree { 0 } else { 4 })
}

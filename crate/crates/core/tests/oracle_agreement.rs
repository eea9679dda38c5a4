//! Every decision procedure must agree with direct quantifier enumeration
//! over bounded word sets on seeded random tiny instances.

use coordctl_core::checks::{
    is_controllable, is_lm_closed, is_nonconflicting, is_normal, is_observable,
    is_observable_with, is_relatively_observable, SigmaQuantification,
};
use coordctl_core::coordination::{
    is_conditionally_c_observable, is_conditionally_closed, is_conditionally_controllable,
    is_conditionally_normal, is_conditionally_observable, is_conditionally_strong_c_observable,
};
use coordctl_core::exec::parallel_default;
use coordctl_core::oracle::{self, CoordinationSnapshot};
use coordctl_core::random::{
    random_ambient, random_monolithic, random_problem, run_seeded, ProblemConfig,
};
use coordctl_core::{Generator, LanguageKind};

const SEED: u64 = 0xC0_FFEE;
const HORIZON: usize = 10;

fn marked(g: &Generator) -> coordctl_core::words::WordSet {
    let b = oracle::enumerate(g, HORIZON, LanguageKind::Marked);
    assert!(b.saturated, "instance generators must have finite languages");
    b.words
}

fn generated(g: &Generator) -> coordctl_core::words::WordSet {
    let b = oracle::enumerate(g, HORIZON, LanguageKind::Generated);
    assert!(b.saturated, "instance generators must have finite languages");
    b.words
}

#[test]
fn monolithic_checks_agree_with_the_bounded_oracle() {
    let failures: Vec<String> = run_seeded(500, SEED, parallel_default(), |i, mut rng| {
        let inst = random_monolithic(&mut rng, &["a", "b", "u"]);
        let kw = marked(&inst.k);
        let cw = marked(&inst.c);
        let lw = generated(&inst.plant);
        let lm = marked(&inst.plant);
        let mut bad = Vec::new();

        let prod = is_controllable(&inst.k, &inst.plant, &inst.sigma_u)
            .unwrap()
            .holds;
        let (orac, _) = oracle::controllable_words(&kw, &lw, &inst.sigma_u);
        if prod != orac {
            bad.push(format!("instance {i}: controllable {prod} vs oracle {orac}"));
        }

        let prod = is_observable(&inst.k, &inst.plant, &inst.sigma_o, &inst.sigma_c)
            .unwrap()
            .holds;
        let (orac, _) = oracle::observable_words(&kw, &lw, &inst.sigma_o, &inst.sigma_c);
        if prod != orac {
            bad.push(format!("instance {i}: observable {prod} vs oracle {orac}"));
        }

        let prod = is_observable_with(
            &inst.k,
            &inst.plant,
            &inst.sigma_o,
            &inst.sigma_c,
            SigmaQuantification::AllEvents,
        )
        .unwrap()
        .holds;
        let (orac, _) =
            oracle::observable_words(&kw, &lw, &inst.sigma_o, inst.plant.alphabet());
        if prod != orac {
            bad.push(format!(
                "instance {i}: observable (full quantifier) {prod} vs oracle {orac}"
            ));
        }

        let prod = is_normal(&inst.k, &inst.plant, &inst.sigma_o).unwrap().holds;
        let (orac, _) = oracle::normal_words(&kw, &lw, &inst.sigma_o);
        if prod != orac {
            bad.push(format!("instance {i}: normal {prod} vs oracle {orac}"));
        }

        let prod = is_relatively_observable(&inst.k, &inst.c, &inst.plant, &inst.sigma_o)
            .unwrap()
            .holds;
        let (orac, _) = oracle::relatively_observable_words(
            &kw,
            &cw,
            &lw,
            &inst.sigma_o,
            inst.plant.alphabet(),
        );
        if prod != orac {
            bad.push(format!(
                "instance {i}: relatively observable {prod} vs oracle {orac}"
            ));
        }

        let prod = is_lm_closed(&inst.k, &inst.plant).unwrap().holds;
        let (orac, _) = oracle::lm_closed_words(&kw, &lm);
        if prod != orac {
            bad.push(format!("instance {i}: lm-closed {prod} vs oracle {orac}"));
        }

        let prod = is_nonconflicting(&inst.k, &inst.c).unwrap().holds;
        let (orac, _) = oracle::nonconflicting_words(
            &kw,
            inst.k.alphabet(),
            &cw,
            inst.c.alphabet(),
        );
        if prod != orac {
            bad.push(format!("instance {i}: nonconflicting {prod} vs oracle {orac}"));
        }

        bad
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "disagreements:\n{}", failures.join("\n"));
}

#[test]
fn conditional_checks_agree_with_the_bounded_oracle() {
    let cfg = ProblemConfig::default();
    let failures: Vec<String> = run_seeded(500, SEED ^ 0xABCD, parallel_default(), |i, mut rng| {
        let p = match random_problem(&mut rng, &cfg) {
            Ok(p) => p,
            Err(e) => return vec![format!("instance {i}: generation failed: {e}")],
        };
        let snap = CoordinationSnapshot::capture(&p, HORIZON);
        assert!(snap.saturated);
        let ambient = random_ambient(&mut rng, &p);
        let ambient_words = marked(&ambient);
        let mut bad = Vec::new();

        let prod = is_conditionally_controllable(&p).unwrap().holds;
        let (orac, _) = oracle::conditionally_controllable_words(&snap, &snap.spec);
        if prod != orac {
            bad.push(format!(
                "instance {i}: conditionally controllable {prod} vs oracle {orac}"
            ));
        }

        let prod = is_conditionally_observable(&p).unwrap().holds;
        let (orac, _) = oracle::conditionally_observable_words(&snap, &snap.spec);
        if prod != orac {
            bad.push(format!(
                "instance {i}: conditionally observable {prod} vs oracle {orac}"
            ));
        }

        let prod = is_conditionally_closed(&p).unwrap().holds;
        let (orac, _) = oracle::conditionally_closed_words(&snap, &snap.spec);
        if prod != orac {
            bad.push(format!(
                "instance {i}: conditionally closed {prod} vs oracle {orac}"
            ));
        }

        let prod = is_conditionally_normal(&p).unwrap().holds;
        let (orac, _) = oracle::conditionally_normal_words(&snap, &snap.spec);
        if prod != orac {
            bad.push(format!(
                "instance {i}: conditionally normal {prod} vs oracle {orac}"
            ));
        }

        let prod = is_conditionally_c_observable(&p, &ambient).unwrap().holds;
        let (orac, _) =
            oracle::conditionally_c_observable_words(&snap, &snap.spec, &ambient_words);
        if prod != orac {
            bad.push(format!(
                "instance {i}: conditionally ambient-observable {prod} vs oracle {orac}"
            ));
        }

        let prod = is_conditionally_strong_c_observable(&p, &ambient).unwrap().holds;
        let (orac, _) = oracle::conditionally_strong_c_observable_words(
            &snap,
            &snap.spec,
            &ambient_words,
        );
        if prod != orac {
            bad.push(format!(
                "instance {i}: conditionally strong ambient-observable {prod} vs oracle {orac}"
            ));
        }

        bad
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "disagreements:\n{}", failures.join("\n"));
}

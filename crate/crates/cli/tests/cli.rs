//! End-to-end tests of the command-line surface: exit-code contract, report
//! shapes, witness content and byte-stable outputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn coordctl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coordctl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn failing_conditional_check_exits_one_with_the_pinned_witness() {
    let bundle = fixture("podemo/bundle.txt");
    let out = coordctl(&[
        "check",
        "conditionally-c-observable",
        "--bundle",
        bundle.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["holds"], false);
    assert_eq!(doc["witness"]["kind"], "pair");
    assert_eq!(doc["witness"]["s"], serde_json::json!([]));
    assert_eq!(doc["witness"]["s_prime"], serde_json::json!(["tau"]));
    assert_eq!(doc["witness"]["sigma"], "a");
    assert_eq!(doc["components"].as_array().unwrap().len(), 3);
}

#[test]
fn passing_component_checks_exit_zero() {
    for (bundle, property) in [
        ("podemo/bundle_k1.txt", "conditionally-c-observable"),
        ("podemo/bundle_k2.txt", "conditionally-c-observable"),
        ("podemo/bundle_k2.txt", "conditionally-normal"),
        ("podemo/bundle.txt", "conditionally-decomposable"),
        ("podemo/bundle.txt", "conditionally-controllable"),
    ] {
        let out = coordctl(&[
            "check",
            property,
            "--bundle",
            fixture(bundle).to_str().unwrap(),
        ]);
        assert_eq!(
            exit_code(&out),
            0,
            "{property} on {bundle}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(stdout_json(&out)["holds"], true);
    }
}

#[test]
fn strong_variant_fails_for_the_first_component() {
    let out = coordctl(&[
        "check",
        "conditionally-strong-c-observable",
        "--bundle",
        fixture("podemo/bundle_k1.txt").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn malformed_inputs_exit_two() {
    let out = coordctl(&[
        "check",
        "conditionally-controllable",
        "--bundle",
        fixture("broken/bundle.txt").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");

    let out = coordctl(&["check", "no-such-property", "--bundle", "nowhere.txt"]);
    assert_eq!(exit_code(&out), 2);

    // missing bundle file
    let out = coordctl(&["check", "controllable", "--bundle", "nowhere.txt"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn monolithic_checks_run_from_the_same_bundle() {
    // the union specification fails plain observability against the plant
    let out = coordctl(&[
        "check",
        "observable",
        "--bundle",
        fixture("podemo/bundle.txt").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["witness"]["s_prime"], serde_json::json!(["tau"]));

    // and passes controllability (no uncontrollable events)
    let out = coordctl(&[
        "check",
        "controllable",
        "--bundle",
        fixture("podemo/bundle.txt").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let out = coordctl(&[
        "check",
        "supervisor-exists",
        "--bundle",
        fixture("podemo/bundle.txt").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
    let doc = stdout_json(&out);
    let conditions = doc["conditions"].as_array().unwrap();
    assert_eq!(conditions.len(), 3);
    assert_eq!(conditions[0]["name"], "controllable");
    assert_eq!(conditions[0]["holds"], true);
    assert_eq!(conditions[2]["name"], "observable");
    assert_eq!(conditions[2]["holds"], false);
}

#[test]
fn certified_synthesis_exits_zero_and_writes_stable_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir1 = tmp.path().join("run1");
    let out_dir2 = tmp.path().join("run2");
    for dir in [&out_dir1, &out_dir2] {
        let out = coordctl(&[
            "synth",
            "cro",
            "--bundle",
            fixture("podemo/bundle.txt").to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }

    // identical runs produce byte-identical reports and language files
    for file in ["report.json", "m.aut", "sup_cro_k.aut", "sup_cro_1k.aut", "sup_cro_2k.aut"] {
        let a = fs::read(out_dir1.join(file)).unwrap();
        let b = fs::read(out_dir2.join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }

    // and match the committed golden report byte for byte
    let golden = fs::read_to_string(fixture("podemo/golden_report.json")).unwrap();
    let produced = fs::read_to_string(out_dir1.join("report.json")).unwrap();
    assert_eq!(produced, golden, "report.json drifted from the golden fixture");

    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir1.join("report.json")).unwrap()).unwrap();
    assert_eq!(doc["pipeline"], "cro");
    assert_eq!(doc["certified"], true);
    assert_eq!(doc["languages"]["m"], "m.aut");
    assert_eq!(doc["versions"]["schema"], 1);

    // the composed language is exactly {tau}
    let m = fs::read_to_string(out_dir1.join("m.aut")).unwrap();
    assert!(m.contains("trans: 0 tau 1"), "m.aut:\n{m}");
    assert!(m.contains("marked: 1"), "m.aut:\n{m}");
}

#[test]
fn synthesis_with_failed_hypotheses_exits_three_and_names_them() {
    let tmp = tempfile::tempdir().unwrap();
    for pipeline in ["cc", "cro"] {
        let out = coordctl(&[
            "synth",
            pipeline,
            "--bundle",
            fixture("conflict/bundle.txt").to_str().unwrap(),
            "--out",
            tmp.path().join(pipeline).to_str().unwrap(),
        ]);
        assert_eq!(
            exit_code(&out),
            3,
            "{pipeline}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc = stdout_json(&out);
        assert_eq!(doc["certified"], false);
        let failed: Vec<&str> = doc["hypotheses"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|h| h["holds"] == false)
            .map(|h| h["name"].as_str().unwrap())
            .collect();
        assert_eq!(failed, vec!["components_nonconflicting"], "{pipeline}");
    }
}

#[test]
fn oracle_agrees_on_the_fixture_bundles() {
    for property in [
        "conditionally-c-observable",
        "conditionally-controllable",
        "conditionally-normal",
        "observable",
        "controllable",
        "sup-controllable",
        "sup-conditionally-controllable",
    ] {
        let out = coordctl(&[
            "oracle",
            "--bundle",
            fixture("podemo/bundle.txt").to_str().unwrap(),
            "--property",
            property,
        ]);
        assert_eq!(
            exit_code(&out),
            0,
            "{property}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc = stdout_json(&out);
        assert_eq!(doc["agree"], true, "{property}");
        assert_eq!(doc["exact"], true, "{property}");
    }
}

#[test]
fn seeded_oracle_campaign_agrees_and_mutants_are_caught() {
    let out = coordctl(&["oracle", "--campaign", "25", "--seed", "7"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["instances"], 25);
    assert_eq!(doc["disagreements"].as_array().unwrap().len(), 0);

    // campaigns demand a seed
    let out = coordctl(&["oracle", "--campaign", "5"]);
    assert_eq!(exit_code(&out), 2);

    // an injected mutant must be flagged as a disagreement and captured
    let tmp = tempfile::tempdir().unwrap();
    let out = coordctl(&[
        "oracle",
        "--campaign",
        "3",
        "--seed",
        "7",
        "--inject-mutant",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 4);
    let doc = stdout_json(&out);
    assert!(!doc["disagreements"].as_array().unwrap().is_empty());
    // the regression bundle for the disagreeing instance exists and reloads
    let bundle = tmp.path().join("disagreement_0.bundle");
    assert!(bundle.exists());
    let out = coordctl(&[
        "check",
        "conditionally-controllable",
        "--bundle",
        bundle.to_str().unwrap(),
    ]);
    assert!(matches!(exit_code(&out), 0 | 1));
}

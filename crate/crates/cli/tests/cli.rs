use std::path::Path;
use std::process::{Command, Output};

use extalg::corpus::{builtin_corpus, Profile};
use extalg::instance::{load, parse_instance};
use extalg::laws::parse_laws;
use extalg::HarnessError;

fn extalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extalg")).args(args).output().expect("binary runs")
}

fn write_golden(dir: &Path, id: &str) -> String {
    let corpus = builtin_corpus(0, Profile::Small, 64);
    let e = corpus.entries.iter().find(|e| e.id == id).expect("golden entry");
    let path = dir.join(format!("{id}.json"));
    std::fs::write(&path, e.instance.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn small_profile_is_deterministic_and_loadable() {
    let a = builtin_corpus(3, Profile::Small, 64);
    let b = builtin_corpus(3, Profile::Small, 64);
    assert_eq!(a.entries, b.entries);
    let rings = a.entries.iter().filter(|e| !matches!(e.instance.kind(), extalg::instance::Kind::Poset)).count();
    assert!(rings >= 20);
    for e in &a.entries {
        assert!(load(&e.instance, &e.id).is_ok(), "{} does not load", e.id);
        let text = e.instance.to_json();
        assert_eq!(parse_instance(&text, &e.id).unwrap(), e.instance, "{} does not round-trip", e.id);
    }
}

#[test]
fn unknown_law_is_a_config_error() {
    assert!(matches!(parse_laws("prop_inv_flat,nope"), Err(HarnessError::ConfigInvalid(_))));
    assert_eq!(parse_laws("remark_a,golden").unwrap(), vec!["golden", "remark_a"]);
    let out = extalg(&["verify", "--laws", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn remark_b_file_analyzes_to_the_expected_flags() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_golden(dir.path(), "remark_b_2_3");
    let out = extalg(&["analyze", "--file", &file, "--props", "flat,faithfully_flat,locally_principal"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let holds: Vec<bool> = report["entries"][0]["observations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["verdict"]["holds"].as_bool().unwrap())
        .collect();
    assert_eq!(holds, vec![true, false, true]);
}

#[test]
fn diagonal_file_reports_the_weak_surjectivity_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_golden(dir.path(), "example_diag_F2_2");
    let out = extalg(&["analyze", "--file", &file, "--props", "weakly_surjective", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("weakly_surjective @ instance: false; witness (1, 0) at {(0, 0)}"), "{text}");
}

#[test]
fn malformed_files_report_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"kind\": \"finite\",\n \"extension\": {\"ambient\": [[2, 1, [0, 1]]], \"bogus\": 1}}").unwrap();
    let out = extalg(&["analyze", "--file", path.to_str().unwrap(), "--props", "flat"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(":2:") && err.contains("extension.bogus"), "{err}");

    std::fs::write(&path, "{\"kind\": \"finite\", \"extension\": {\"ambient\": [[4, 1, [0, 1]]]}}").unwrap();
    let out = extalg(&["analyze", "--file", path.to_str().unwrap(), "--props", "flat"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("extension.ambient[0]"));
}

#[test]
fn poset_command_rejects_the_missing_middle() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_golden(dir.path(), "missing_middle");
    let out = extalg(&["poset", "--file", &bad, "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("hypotheses @ instance: false; witness a1, a2, b"));
    let good = write_golden(dir.path(), "divisors_of_60");
    assert_eq!(extalg(&["poset", "--file", &good]).status.code(), Some(0));
    let ring = write_golden(dir.path(), "remark_b_2_3");
    assert_eq!(extalg(&["poset", "--file", &ring]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_and_prints_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = extalg(&["verify", "--profile", "small", "--laws", "remark_b,example_diag", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("0 failures: PASS"), "{summary}");
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    let total: u64 = report["laws"].as_array().unwrap().iter().map(|a| a["instances"].as_u64().unwrap()).sum();
    assert_eq!(total, report["summary"]["law_instances"].as_u64().unwrap());
}

#[test]
fn thread_count_does_not_change_the_report() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_extalg"))
            .args(["verify", "--profile", "small", "--seed", "5"])
            .env("EXTALG_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

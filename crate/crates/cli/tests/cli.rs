use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use biocoref_cli::write_fixtures;
use biocoref_core::ResolutionOutput;

fn biocoref(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biocoref")).args(args).output().unwrap()
}

fn summary(out: &Output) -> serde_json::Value {
    let stderr = String::from_utf8_lossy(&out.stderr);
    let line = stderr.lines().rev().find(|l| l.contains("\"summary\"")).expect("summary line");
    serde_json::from_str::<serde_json::Value>(line).unwrap()["summary"].clone()
}

fn fixtures(dir: &Path) -> String {
    write_fixtures(dir).unwrap();
    dir.display().to_string()
}

#[test]
fn empty_glob_succeeds_with_zero_documents() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let o = biocoref(&["resolve", "--in", &format!("{}/none/*.json", tmp.path().display()), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(summary(&o)["docs"], 0);
}

#[test]
fn fixture_run_reconciles_counters() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = fixtures(&tmp.path().join("fx"));
    let out = tmp.path().join("out");
    let o = biocoref(&[
        "resolve", "--in", &format!("{fx}/ex*.json"), "--out", out.to_str().unwrap(),
        "--grounding", &format!("{fx}/grounding.tsv"), "--jobs", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = summary(&o);
    assert_eq!(s["docs"], 22);
    let detected = s["anaphors_detected"].as_u64().unwrap();
    assert_eq!(detected, s["resolved"].as_u64().unwrap() + s["unresolved"].as_u64().unwrap());
    let per_sieve: u64 = s["resolved_per_sieve"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(per_sieve, s["resolved"].as_u64().unwrap());
    assert_eq!(fs::read_dir(&out).unwrap().count(), 22);
}

#[test]
fn bad_document_is_isolated_unless_strict() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("in");
    fs::create_dir_all(&input).unwrap();
    let good = biocoref_core::io::save_document(&biocoref_core::fixtures::corpus()[1].doc);
    fs::write(input.join("a_bad.json"), "{ not json").unwrap();
    fs::write(input.join("b_good.json"), &good).unwrap();
    let glob = format!("{}/*.json", input.display());

    let out = tmp.path().join("out");
    let o = biocoref(&["resolve", "--in", &glob, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = summary(&o);
    assert_eq!(s["failed"], 1);
    assert!(s["failures"][0]["input"].as_str().unwrap().ends_with("a_bad.json"));
    assert!(out.join("ex02_pax8.json").exists());

    let strict_out = tmp.path().join("strict");
    let o = biocoref(&["resolve", "--in", &glob, "--out", strict_out.to_str().unwrap(), "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!strict_out.join("ex02_pax8.json").exists());
}

#[test]
fn configuration_errors_exit_2_before_processing() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = fixtures(&tmp.path().join("fx"));
    let out = tmp.path().join("out");
    let glob = format!("{fx}/ex*.json");
    for extra in [
        vec!["--grounding", "/nonexistent/table.tsv"],
        vec!["--disable-sieve", "no_such_sieve"],
        vec!["--disable-sieve", "cleanup"],
        vec!["--schema", glob.as_str()],
    ] {
        let mut args = vec!["resolve", "--in", glob.as_str(), "--out", out.to_str().unwrap()];
        args.extend(extra.iter().copied());
        let o = biocoref(&args);
        assert_eq!(o.status.code(), Some(2), "{extra:?}");
        assert!(!out.exists(), "{extra:?} wrote output");
    }
}

#[test]
fn disabling_pronominal_drops_the_expression_event() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = fixtures(&tmp.path().join("fx"));
    let out = tmp.path().join("out");
    let o = biocoref(&[
        "resolve", "--in", &format!("{fx}/ex12_foxp3.json"), "--out", out.to_str().unwrap(),
        "--disable-sieve", "pronominal", "--emit-provenance",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = ResolutionOutput::from_json(&fs::read(out.join("ex12_foxp3.json")).unwrap()).unwrap();
    assert!(r.links.is_empty());
    assert!(r.completed_events.is_empty());
    assert_eq!(r.dropped.iter().map(|d| d.id.as_str()).collect::<Vec<_>>(), vec!["E1"]);

    let text = biocoref(&["inspect", out.join("ex12_foxp3.json").to_str().unwrap(), "T2"]);
    assert!(String::from_utf8_lossy(&text.stdout).lines().last().unwrap().starts_with("DROPPED T2"));
}

#[test]
fn inspect_shows_exclusions_and_terminal_line() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = fixtures(&tmp.path().join("fx"));
    let out = tmp.path().join("out");
    biocoref(&["resolve", "--in", &format!("{fx}/ex*.json"), "--out", out.to_str().unwrap(), "--emit-provenance"]);

    let o = biocoref(&["inspect", out.join("ex01_gsk3b_selfbinding.json").to_str().unwrap(), "T3"]);
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    assert!(text.contains("T1 \"GSK3β\" excluded: chain with participant T4"), "{text}");
    assert!(text.contains("T2 \"Axin GBD\" accepted"), "{text}");
    assert!(text.lines().last().unwrap().starts_with("LINKED T3 -> T2"), "{text}");

    let o = biocoref(&["inspect", out.join("ex16_baf_emerin.json").to_str().unwrap(), "T3"]);
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    let bafs = text.find("T1 \"BAF\" accepted").unwrap();
    let emerin = text.find("T2 \"emerin\" accepted").unwrap();
    assert!(bafs < emerin);

    let o = biocoref(&["inspect", out.join("ex17_cataphor.json").to_str().unwrap(), "T1"]);
    assert!(String::from_utf8_lossy(&o.stdout).lines().last().unwrap().starts_with("DROPPED T1"));

    let o = biocoref(&["inspect", out.join("ex17_cataphor.json").to_str().unwrap(), "T9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown anaphor"));
}

#[test]
fn inspect_requires_traces() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = fixtures(&tmp.path().join("fx"));
    let out = tmp.path().join("out");
    biocoref(&["resolve", "--in", &format!("{fx}/ex01*.json"), "--out", out.to_str().unwrap()]);
    let o = biocoref(&["inspect", out.join("ex01_gsk3b_selfbinding.json").to_str().unwrap(), "T3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_reports_throughput_and_precision() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = fixtures(&tmp.path().join("fx"));
    let sys = tmp.path().join("sys");
    let base = tmp.path().join("base");
    let glob = format!("{fx}/ex*.json");
    let grounding = format!("{fx}/grounding.tsv");
    biocoref(&["resolve", "--in", &glob, "--out", sys.to_str().unwrap(), "--grounding", &grounding]);
    biocoref(&["resolve", "--in", &glob, "--out", base.to_str().unwrap(), "--no-coref"]);
    let adj = tmp.path().join("adj.csv");
    fs::write(&adj, "event_id,judgment,error_class\na,1\nb,1\nc,0.5\nd,0,CoreferenceResolution\n").unwrap();

    let o = biocoref(&[
        "eval", "--system", sys.to_str().unwrap(), "--baseline", base.to_str().unwrap(),
        "--adjudications", adj.to_str().unwrap(), "--mutant-mode", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["throughput"]["coref_only"], 29);
    assert_eq!(report["throughput"]["combined"], 46);
    assert_eq!(report["precision"]["numerator"], 5);
    assert_eq!(report["precision"]["denominator"], 8);

    let o = biocoref(&["eval", "--system", sys.to_str().unwrap(), "--baseline", base.to_str().unwrap(), "--darpa-collapse"]);
    let table = String::from_utf8_lossy(&o.stdout).to_string();
    assert!(table.contains("Combined"), "{table}");

    let o = biocoref(&[
        "eval", "--system", sys.to_str().unwrap(), "--baseline", base.to_str().unwrap(),
        "--adjudications", adj.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2), "half point accepted outside mutant mode");

    fs::remove_file(base.join("ex01_gsk3b_selfbinding.json")).unwrap();
    let o = biocoref(&["eval", "--system", sys.to_str().unwrap(), "--baseline", base.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("document sets differ"));
}

#[test]
fn darpa_collapse_folds_nested_events() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = fixtures(&tmp.path().join("fx"));
    let sys = tmp.path().join("sys");
    biocoref(&["resolve", "--in", &format!("{fx}/ex09*.json"), "--out", sys.to_str().unwrap(), "--grounding", &format!("{fx}/grounding.tsv")]);
    let o = biocoref(&["eval", "--system", sys.to_str().unwrap(), "--baseline", sys.to_str().unwrap(), "--darpa-collapse", "--json"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["throughput"]["combined"], 6);
    assert_eq!(report["throughput"]["baseline"], 0);
}

#[test]
fn fixtures_check_detects_tampering() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = fixtures(&tmp.path().join("fx"));
    let o = biocoref(&["fixtures", "--dir", &fx, "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().filter(|l| l.starts_with("PASS")).count(), 22);

    let path = Path::new(&fx).join("ex13_rb.json");
    let text = fs::read_to_string(&path).unwrap().replace("The protein", "The factor!");
    fs::write(&path, text).unwrap();
    let o = biocoref(&["fixtures", "--dir", &fx, "--check"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL ex13_rb"));
}

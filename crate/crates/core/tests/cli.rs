use std::process::{Command, Output};

use jokerlab::morava::CoactionSpec;
use jokerlab::verify::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jokerlab"))
        .args(args)
        .env_remove("JOKERLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_report_round_trips() {
    let o = run(&["verify", "--filter", "hecke", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&json(&o)).unwrap();
    assert_eq!(report.summary.total, 5);
    assert_eq!(report.summary.flagged, 1);
    assert_eq!(report.summary.fail, 0);
    assert!(report.checks.iter().all(|c| c.criterion == 9));
}

#[test]
fn verify_text_is_deterministic() {
    let a = run(&["verify", "--filter", "padic"]);
    let b = run(&["verify", "--filter", "padic"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn module_file_is_checked() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(
        &good,
        r#"{"field":"f4","group":"q8","generators":{"i":"1 0; 1 1","j":"1 0; w 1"}}"#,
    )
    .unwrap();
    let o = run(&["module", "--check", good.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["dim"], 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"field":"f4","group":"q8","generators":{"i":"1 1; 0 1","j":"w 0; 0 w"}}"#,
    )
    .unwrap();
    let o = run(&["module", "--check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{not json").unwrap();
    assert_eq!(
        run(&["module", "--check", broken.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["module", "--check", "builtin:W9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["endotrivial", "--module", "nosuch"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["teichmuller", "--element", "q"]).status.code(),
        Some(2)
    );
}

#[test]
fn endotrivial_answers() {
    assert_eq!(
        stdout(&run(&["endotrivial", "--module", "W5"])).trim(),
        "true"
    );
    assert_eq!(
        stdout(&run(&["endotrivial", "--module", "regular"])).trim(),
        "false"
    );
}

#[test]
fn ext_betti_numbers() {
    let o = run(&["ext", "--max-degree", "8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let betti: Vec<u64> = serde_json::from_value(json(&o)["betti"].clone()).unwrap();
    assert_eq!(betti, [1, 2, 2, 1, 1, 2, 2, 1, 1]);
}

#[test]
fn ext_uses_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--cache-dir",
        dir.path().to_str().unwrap(),
        "ext",
        "--max-degree",
        "4",
        "--json",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    assert_eq!(json(&run(&args)), json(&first));
}

#[test]
fn teichmuller_digits() {
    assert_eq!(
        stdout(&run(&["teichmuller", "--element", "i", "--digits", "3"])).trim(),
        "1, 1, w"
    );
    assert_eq!(
        stdout(&run(&["teichmuller", "--element", "j", "--digits", "3"])).trim(),
        "1, w2, w"
    );
}

#[test]
fn massey_contains_the_square() {
    let o = run(&["massey", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["indeterminacy"], serde_json::json!(["u^2+w*v^2"]));
}

#[test]
fn coaction_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eta.json");
    let spec = CoactionSpec::builtin("cone-eta").unwrap();
    std::fs::write(&path, serde_json::to_string(&spec.to_json()).unwrap()).unwrap();
    let from_file = run(&["coaction", "--spec", path.to_str().unwrap(), "--json"]);
    let builtin = run(&["coaction", "--spec", "builtin:cone-eta", "--json"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(json(&from_file)["matrices"], json(&builtin)["matrices"]);
}

#[test]
fn hecke_lists_eight_matrices() {
    let o = run(&["hecke", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["basis"].as_array().unwrap().len(), 8);
    assert_eq!(v["matrices"][1], "1 0 u^3; 0 1 0; 0 0 1");
    assert_eq!(run(&["hecke", "--subgroup", "q8"]).status.code(), Some(2));
}

#[test]
fn dump_group() {
    let v = json(&run(&["--dump-group", "q8"]));
    assert_eq!(v["order"], 8);
    let table: Vec<Vec<usize>> = serde_json::from_value(v["table"].clone()).unwrap();
    assert_eq!(table.len(), 8);
    assert!(table.iter().all(|row| row.len() == 8));
}

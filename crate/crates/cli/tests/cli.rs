use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn fuglede(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuglede"))
        .args(args)
        .env_remove("FUGLEDE_SURVEY_CEILING")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_matches_golden_report() {
    let out = fuglede(&["analyze", "0,1,2,3", "--json"]);
    assert_eq!(code(&out), 0);
    let mut got = json(&out);
    assert!(got["timing"]["elapsed_micros"].is_u64());
    got.as_object_mut().unwrap().remove("timing");
    let golden: Value =
        serde_json::from_str(include_str!("golden/analyze_0_1_2_3.json")).unwrap();
    assert_eq!(got, golden);
}

#[test]
fn analyze_report_reverifies_from_json() {
    let out = fuglede(&["analyze", "0,1,4,5", "--json"]);
    let report: fuglede_core::report::Report = serde_json::from_slice(&out.stdout).unwrap();
    let (spectral, tiling) = report.reverify().unwrap();
    assert_eq!(spectral, report.spectrum_certificate.verdict);
    assert_eq!(tiling, report.tiling_certificate.as_ref().map(|c| c.verdict));
    assert_eq!(code(&out), 0);
}

#[test]
fn analyze_exit_codes() {
    let trivial = fuglede(&["analyze", "0"]);
    assert_eq!(code(&trivial), 0);
    assert_eq!(json(&trivial)["cm_holds"], Value::Bool(true));

    let bad = fuglede(&["analyze", "0,,2"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
    assert!(bad.stdout.is_empty());

    // T2 fails: S_A = {2, 3} but Φ_6 does not divide A(x).
    let no_cm = fuglede(&["analyze", "0,1,2,5,6,7"]);
    assert_eq!(code(&no_cm), 1);
    assert_eq!(json(&no_cm)["cm"]["t2"], Value::Bool(false));

    let text = fuglede(&["analyze", "0,1,2,3", "--text"]);
    assert_eq!(code(&text), 0);
    assert!(String::from_utf8_lossy(&text.stdout).contains("tiling set     {0} + 4Z"));

    assert_eq!(code(&fuglede(&["analyze", "0,1", "--json", "--text"])), 2);
}

#[test]
fn verify_subcommands() {
    let t = fuglede(&["verify", "tiling-zn", "8", "0,1,2,3", "0,4"]);
    assert_eq!(code(&t), 0);
    assert_eq!(json(&t)["verdict"], Value::Bool(true));

    let t = fuglede(&["verify", "tiling-zn", "8", "0,1,2,3", "0,2"]);
    assert_eq!(code(&t), 1);
    assert_eq!(json(&t)["witness"]["kind"], "collision");

    let s = fuglede(&["verify", "spectrum-z", "0,2", "0/1,1/2"]);
    assert_eq!(code(&s), 1);
    let w = &json(&s)["witness"];
    assert_eq!(w["kind"], "non_orthogonal");
    assert_eq!(w["gamma_prime"], "1/2");

    assert_eq!(code(&fuglede(&["verify", "spectrum-z", "0,2", "0/1,1/4"])), 0);
    assert_eq!(code(&fuglede(&["verify", "spectrum-zn", "4", "0,1", "0,2"])), 0);
    assert_eq!(code(&fuglede(&["verify", "spectrum-zn", "4", "0,1", "0,1"])), 1);
    assert_eq!(code(&fuglede(&["verify", "tiling-z", "0,1,2,3", "0", "4"])), 0);
    assert_eq!(code(&fuglede(&["verify", "tiling-z", "0,1,2,3", "0", "5"])), 1);

    let d = fuglede(&["verify", "decompose", "0,1,2,3", "2"]);
    assert_eq!(code(&d), 0);
    assert_eq!(json(&d)["equidistributed"], Value::Bool(true));
    assert_eq!(code(&fuglede(&["verify", "decompose", "0,2", "2"])), 1);

    let f = fuglede(&["verify", "fiber-spectrum", "0..1/2,1..3/2", "2", "0/1,1/2"]);
    assert_eq!(code(&f), 1);
    assert_eq!(json(&f)["decomposition"]["cells"][0]["fiber"], serde_json::json!([0, 2]));
    assert_eq!(code(&fuglede(&["verify", "fiber-spectrum", "0..1", "2", "0/1,1/2"])), 0);
    assert_eq!(code(&fuglede(&["verify", "fiber-spectrum", "0..2", "2", "0/1,1/2"])), 2);

    let l = fuglede(&["verify", "lift", "4", "0,1", "3"]);
    assert_eq!(code(&l), 0);
    assert_eq!(json(&l)["steps"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_arity_and_parse_errors() {
    assert_eq!(code(&fuglede(&["verify", "tiling-zn", "8", "0,1,2,3"])), 2);
    assert_eq!(code(&fuglede(&["verify", "tiling-zn", "8", "0,9", "0"])), 2);
    assert_eq!(code(&fuglede(&["verify", "spectrum-z", "0,2", "0.5"])), 2);
    assert_eq!(code(&fuglede(&["verify", "spectrum-z", "0,2", "2/4"])), 2);
    assert_eq!(code(&fuglede(&["verify", "bogus"])), 2);
}

#[test]
fn survey_rows_and_summary() {
    let out = fuglede(&["survey", "6"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["tiles"], summary["spectral"]);
    assert_eq!(summary["tile_not_spectral"], 0);
    assert_eq!(summary["spectral_not_tile"], 0);
    let keys: Vec<&str> = lines[0].as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let mut expected = ["n", "set", "tile", "tile_witness", "spectral", "spectrum_witness", "cm_t1", "cm_t2", "s_a", "orbit"];
    expected.sort();
    assert_eq!(keys, expected);

    let one = fuglede(&["survey", "1"]);
    assert_eq!(String::from_utf8(one.stdout).unwrap().lines().count(), 2);
}

#[test]
fn survey_units_merges_rows() {
    let rows = |args: &[&str]| {
        let o = fuglede(args);
        let text = String::from_utf8(o.stdout).unwrap();
        let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        let s = lines.last().unwrap()["summary"].clone();
        (lines.len() - 1, s["tile_not_spectral"].clone(), s["spectral_not_tile"].clone())
    };
    let plain = rows(&["survey", "8"]);
    let units = rows(&["survey", "8", "--units"]);
    assert!(units.0 < plain.0);
    assert_eq!((plain.1, plain.2), (units.1, units.2));
}

#[test]
fn survey_ceiling_is_enforced() {
    let out = Command::new(env!("CARGO_BIN_EXE_fuglede"))
        .args(["survey", "9"])
        .env("FUGLEDE_SURVEY_CEILING", "8")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert_eq!(code(&fuglede(&["survey", "0"])), 2);
}

#[test]
fn survey_files_identical_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["jsonl", "csv"] {
        let mut outputs = Vec::new();
        for jobs in ["1", "4", "8"] {
            let path = dir.path().join(format!("s{jobs}.{format}"));
            let o = fuglede(&["survey", "12", "--jobs", jobs, "--out", format, "--output", path.to_str().unwrap()]);
            assert_eq!(code(&o), 0);
            outputs.push(fs::read(&path).unwrap());
        }
        assert!(!outputs[0].is_empty());
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{format} output differs across --jobs");
    }
}

#[test]
fn lift_survey_rows() {
    let out = fuglede(&["lift-survey", "4", "--k-max", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        assert_eq!(row["steps"].as_array().unwrap().len(), 2);
        assert!(row["stable_from"].as_u64().unwrap() >= 1);
    }
}

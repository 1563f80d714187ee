use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn curvesys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvesys")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn corpus_file(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn analyze_nodal_cubic() {
    let out = curvesys(&["analyze", "y^2*z - x^3 - x^2*z"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["nuTilde"], 5);
    assert_eq!(v["genus"], 0);
    assert_eq!(v["omegaNonempty"], true);
    assert_eq!(v["dimLC"], 6);
    assert_eq!(v["LC"]["projDim"], 6);
    assert_eq!(v["LC"]["baseCluster"], v["cluster"]);
}

#[test]
fn analyze_errors_exit_two() {
    let out = curvesys(&["analyze", "x + y^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "NotHomogeneous");
    let out = curvesys(&["analyze", "x*(y^2 - x*z)"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "Reducible");
    let out = curvesys(&["analyze", "--assume-irreducible", "x*(y^2 - x*z)"]);
    assert_eq!(json(&out)["error"]["kind"], "GenusNegative");
}

#[test]
fn analyze_smooth_cubic() {
    let v = json(&curvesys(&["analyze", "y^2*z - x^3 + x*z^2"]));
    assert_eq!(v["genus"], 1);
    assert_eq!(v["omegaNonempty"], false);
    assert_eq!(v["dimLC"], Value::Null);
}

#[test]
fn diagrams() {
    let nodes = |curve: &str| {
        let out = curvesys(&["diagram", curve]);
        assert_eq!(out.status.code(), Some(0));
        String::from_utf8(out.stdout).unwrap().matches("label=").count()
    };
    assert_eq!(nodes("y^2*z - x^3 - x^2*z"), 1);
    assert_eq!(nodes("x^2 + y*z"), 0);
    assert_eq!(nodes("y^2*z^3 - x^5"), 4);
    let out = curvesys(&["diagram", "--format", "json", "y^2*z^3 - x^5"]);
    assert_eq!(json(&out).as_array().map(|a| a.len()), Some(4));
}

#[test]
fn verify_bundled_corpus() {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/acceptance.txt");
    let out = curvesys(&["verify", corpus]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["total"], 6);
    assert_eq!(v["summary"]["failed"], 0);
    for c in v["curves"].as_array().unwrap() {
        let expected = if c["omegaNonempty"] == true { "pass" } else { "skipped" };
        for (_, status) in c["checks"].as_object().unwrap() {
            assert_eq!(status, expected, "{c}");
        }
    }
}

#[test]
fn verify_edge_cases() {
    let empty = corpus_file("empty.txt", "");
    let out = curvesys(&["verify", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["total"], 0);

    let smooth = corpus_file("smooth.txt", "# smooth cubic only\ny^2*z - x^3 + x*z^2\n");
    let out = curvesys(&["verify", "--format", "text", smooth.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("generalMember=n/a"));

    let mixed = corpus_file("mixed.txt", "x^2 + y*z\nx + y^2\n");
    let out = curvesys(&["verify", mixed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["curves"][0]["checks"]["dimension"], "pass");
    assert_eq!(v["curves"][1]["error"]["kind"], "NotHomogeneous");
    assert_eq!(v["curves"][1]["line"], 2);

    let out = curvesys(&["verify", "/nonexistent/corpus.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_per_seed() {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/acceptance.txt");
    let a = curvesys(&["verify", corpus, "--seed", "17"]);
    let b = curvesys(&["verify", corpus, "--seed", "17"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 17);
}

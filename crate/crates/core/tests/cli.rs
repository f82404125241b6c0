use std::process::{Command, Output};

use hilbchow::algebra::{GradedSubmodule, ModuleJson};
use hilbchow::assembly::equivariant_chow;
use hilbchow::toric::ToricSurface;

fn hilbchow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbchow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hilbchow(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn fixed_point_records() {
    let v = json(&["fixed-points", "--surface", "p2", "--points", "3"]);
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 22);
    for r in records {
        assert_eq!(r["weights"].as_array().unwrap().len(), 6);
        assert_eq!(r["parts"].as_array().unwrap().len(), 3);
    }
    let labels: Vec<&str> = records
        .iter()
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    for l in ["A", "B", "C", "D", "E"] {
        assert!(labels.contains(&l));
    }
    assert_eq!(
        json(&["fixed-points", "--surface", "P1xP1", "--points", "2"])
            .as_array()
            .unwrap()
            .len(),
        14
    );
}

#[test]
fn betti_numbers() {
    assert_eq!(
        stdout(&["betti", "--surface", "p2", "--points", "2"]),
        "[1,2,3,2,1]\n"
    );
    assert_eq!(
        stdout(&[
            "betti",
            "--surface",
            "p2",
            "--points",
            "2",
            "--method",
            "chow"
        ]),
        "[1,2,3,2,1]\n"
    );
    assert_eq!(
        stdout(&[
            "betti",
            "--surface",
            "[[1,0],[0,1],[-1,-1]]",
            "--points",
            "1"
        ]),
        "[1,1,1]\n"
    );
}

#[test]
fn verify_bundled_relations() {
    let out = hilbchow(&[
        "verify",
        "--surface",
        "p2",
        "--points",
        "3",
        "--relations",
        "thm53.json",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("relation 8 (minus): pass"));
    assert!(text.contains("relation-cut module equals"));
}

#[test]
fn failing_relation_exits_nonzero() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("bad_relation.json");
    std::fs::write(
        &path,
        r#"{"relations":[{"id":"x","terms":[{"label":"a","coeff":1},{"label":"a13","coeff":-1}],"modulus":[{"char":[0,1],"power":3}]}]}"#,
    )
    .unwrap();
    let out = hilbchow(&[
        "verify",
        "--points",
        "3",
        "--relations",
        path.to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_passed"], false);
}

#[test]
fn bad_input_is_an_error() {
    assert_eq!(
        hilbchow(&["betti", "--surface", "P7", "--points", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hilbchow(&["complement", "--staircase", "1,2"])
            .status
            .code(),
        Some(2)
    );
    assert!(!hilbchow(&["betti"]).status.success());
}

#[test]
fn module_output_round_trips_and_is_deterministic() {
    let args = ["chow", "--surface", "p2", "--points", "2", "--jobs", "2"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let parsed: ModuleJson = serde_json::from_str(&first).unwrap();
    let module = GradedSubmodule::from_json(&parsed).unwrap();
    assert_eq!(
        module,
        equivariant_chow(&ToricSurface::projective_plane(), 2, 4).unwrap()
    );
    let betti = json(&["chow", "--points", "2", "--emit", "betti"]);
    assert_eq!(betti["betti"], serde_json::json!([1, 2, 3, 2, 1]));
}

#[test]
fn components_and_tangents() {
    let comps = json(&["components", "--points", "3", "--subtorus", "1,-1"]);
    let with_a = comps
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["labels"].as_array().unwrap().contains(&"A".into()))
        .unwrap();
    assert_eq!(with_a["dimension"], 0);
    let t = json(&["tangent", "--points", "1", "--point", "p3[1]"]);
    assert_eq!(t[0]["weights"], serde_json::json!([[0, -1], [-1, 0]]));
}

#[test]
fn combinatorics_commands() {
    assert_eq!(
        json(&["complement", "--staircase", "[2]"])["complement"],
        "[2]"
    );
    assert_eq!(
        stdout(&["linkage", "--from", "1,1", "--to", "2", "--format", "text"]),
        "1\n0\n"
    );
    assert_eq!(
        json(&["linkage", "--from", "2", "--to", "1,1"])["linked"],
        false
    );
    let inc = json(&["incidence", "--first", "1,1", "--second", "2"]);
    assert_eq!(inc["necessary_condition"], true);
    let g = json(&[
        "graded-hilbert",
        "--weights",
        "1,1",
        "--hilbert",
        "1,1",
        "--max-degree",
        "4",
    ]);
    assert_eq!(g["fixed_points"].as_array().unwrap().len(), 2);
    assert_eq!(g["piece_dims"], serde_json::json!([1, 3, 5, 7, 9]));
}

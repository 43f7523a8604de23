use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().expect("forge runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn classify_reports_the_fibre_configuration() {
    let out = forge(&["classify", "y^2 = x^3 + x^2 + t*x"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["euler_total"], 12);
    let types: Vec<&str> = v["fibers"].as_array().unwrap().iter().map(|f| f["type"].as_str().unwrap()).collect();
    assert_eq!(types, ["I1", "I2", "III*"]);
}

#[test]
fn custom_variable_names() {
    let out = forge(&["classify", "w^2 = x(x^2 - 8(2+3-2)t^2 x + 16(2t+3)(3t+2)t^3)", "--vars", "x,w,t"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["euler_total"], 24);
}

#[test]
fn height_of_torsion_section_is_zero() {
    let out = forge(&["height", "y^2 = x^3 + x^2 + t*x", "(0,0)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["sections"][0]["height"], "0");
}

#[test]
fn basechange_and_twist() {
    let out = forge(&["basechange", "y^2 = x^3 + x^2 + t*x", "--f", "(2t+3)(3t+2)/t"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cover_fibres"]["euler_total"], 24);
    let out = forge(&["twist", "y^2 = x^3 + x^2 + t*x", "--d", "t-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["fibers"].as_array().unwrap().iter().any(|f| f["type"] == "I0*" && f["place"] == "t=1"));
}

#[test]
fn enriques_on_a_free_example() {
    let out = forge(&["enriques", "y^2 = x^3 + x^2 + (2t+3)(3t+2)/t*x", "--deck", "(x, y, 1/t)", "--section", "(0,0)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["free"], true);
}

#[test]
fn lattice_queries() {
    let v = json(&forge(&["lattice", "U + 2E8(-1) + <-4> + <-6>", "disc"]));
    assert_eq!(v["disc"], "-24");
    let v = json(&forge(&["lattice", "U(2)", "dgroup"]));
    assert_eq!(v["invariant_factors"], serde_json::json!(["2", "2"]));
    let v = json(&forge(&["lattice", "E8(-1)", "roots"]));
    assert_eq!(v["count"], 240);
    let v = json(&forge(&["lattice", "U + <-2>", "complement", "--images", "1,1,0"]));
    assert_eq!(v["complement_disc"], "4");
    let v = json(&forge(&["lattice", "A1(-1) + A1(-1) + A1(-1) + A1(-1)", "overlattice", "--glue", "1/2,1/2,1/2,1/2"]));
    assert_eq!(v["index"], "2");
}

#[test]
fn verify_exit_codes() {
    let out = forge(&["verify", "brauer-1-3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("brauer(1,3)  PASS"));
    let out = forge(&["verify", "m1-lemma-degenerate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
    assert_eq!(forge(&["verify", "no-such-example"]).status.code(), Some(2));
    assert_eq!(forge(&["verify", "brauer(1)"]).status.code(), Some(2));
    assert_eq!(forge(&["classify", "y^2 = x^3 +"]).status.code(), Some(2));
    assert_eq!(forge(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_json_round_trips() {
    let out = forge(&["verify", "figure3(3)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["id"], "figure3(3)");
    let back: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
    assert!(v["assertions"].as_array().unwrap().iter().all(|a| a["pass"] == true && a["provenance"].is_string()));
}

#[test]
fn verify_all_covers_the_registry() {
    let out = forge(&["verify", "--all", "--format", "json"]);
    let v = json(&out);
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for name in ["es321", "bpf", "inose", "m1-family", "m2-family", "2x4star", "es19-m1", "singular-24", "brauer", "tau-anti"] {
        assert!(ids.iter().any(|id| id.starts_with(name)), "{name} missing");
    }
    // the degenerate-locus example fails on two loci, so the run as a whole exits 1
    assert_eq!(out.status.code(), Some(1));
}

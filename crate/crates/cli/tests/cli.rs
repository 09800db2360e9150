use std::process::Command;

use heiscurve_cli::{run, EXIT_FAIL, EXIT_GUARD, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("heiscurve").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn genus_of_h333() {
    let v = json(&["genus", "--m", "3", "--n", "3", "--l", "3"]);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["closed_form_genus"], 1);
    assert_eq!(v["degree"], 27);
}

#[test]
fn genus_from_action_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    // Fermat cubic: regular action of Z/3 x Z/3.
    let px: Vec<usize> = (0..9).map(|i| (i / 3 + 1) % 3 * 3 + i % 3).collect();
    let py: Vec<usize> = (0..9).map(|i| i / 3 * 3 + (i % 3 + 1) % 3).collect();
    std::fs::write(&path, serde_json::json!({"px": px, "py": py}).to_string()).unwrap();
    let v = json(&["genus", "--action", path.to_str().unwrap()]);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["cusp_count"], 9);
}

#[test]
fn bad_action_file_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, r#"{"px": [0, 0], "py": [1, 0]}"#).unwrap();
    let (code, _, err) = call(&["genus", "--action", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("permutation"), "{err}");
}

#[test]
fn invalid_parameters_exit_2() {
    assert_eq!(call(&["genus", "--m", "3", "--n", "2", "--l", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(call(&["homology"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--criteria", "11"]).0, EXIT_USAGE);
    assert_eq!(call(&["psl2", "--n", "5", "--phi", "3"]).0, EXIT_USAGE);
}

#[test]
fn guard_exit_3() {
    let (code, _, err) = call(&["homology", "--n", "50"]);
    assert_eq!(code, EXIT_GUARD);
    assert!(err.contains("--force"));
    assert_eq!(call(&["cuspidal", "--n", "60"]).0, EXIT_GUARD);
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
    assert_eq!(call(&["--version"]).0, EXIT_OK);
}

#[test]
fn classify_genus_one() {
    let v = json(&["classify-genus", "--target", "1", "--bound", "6"]);
    let triples: Vec<(u64, u64, u64)> = v["triples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["M"].as_u64().unwrap(), t["N"].as_u64().unwrap(), t["L"].as_u64().unwrap()))
        .collect();
    assert!(triples.contains(&(3, 3, 3)));
    assert!(triples.contains(&(2, 4, 2)));
    assert_eq!(triples.len(), 8);
}

#[test]
fn homology_and_closed_form() {
    let v = json(&["homology", "--n", "3", "--closed-form"]);
    assert_eq!(v["invariants"]["free_rank"], 2);
    assert_eq!(v["closed_form"]["invariants_agree"], true);
}

#[test]
fn cuspidal_group_n5() {
    let v = json(&["cuspidal", "--n", "5"]);
    assert_eq!(v["matches_expected"], true);
    assert_eq!(v["order_DA"], 5);
}

#[test]
fn cyclotomic_n5_with_table() {
    let v = json(&["cyclotomic-checks", "--n", "5", "--mod11"]);
    let text = v.to_string();
    assert!(text.contains("mod11"), "{text}");
}

#[test]
fn psl2_mod3() {
    let v = json(&["psl2", "--n", "3", "--phi", "3"]);
    assert_eq!(v["psl2_order"], 12);
    assert_eq!(v["phi_image"]["order"], 4);
    assert_eq!(v["phi_image"]["is_d3"], true);
    let v = json(&["psl2", "--n", "6"]);
    assert_eq!(v["gamma2_index"], 12);
}

#[test]
fn congruence_n3() {
    let v = json(&["congruence", "--n", "3"]);
    assert_eq!(v["Phi_N"]["verdict"], "NOT_CONGRUENCE");
    assert_eq!(v["Phi_prime_N"]["verdict"], "NOT_CONGRUENCE");
    assert_eq!(v["Phi_prime_N"]["index"], 27);
}

#[test]
fn heisenberg_ops() {
    let v = json(&["heisenberg", "--m", "5", "--n", "5", "--l", "5", "element-order", "--g", "1,0,1"]);
    assert_eq!(v["result"], 5);
    let v = json(&["heisenberg", "--m", "2", "--n", "2", "--l", "2", "exponent"]);
    assert_eq!(v["result"]["exponent"], 4);
    let v = json(&["heisenberg", "--m", "3", "--n", "3", "--l", "3", "pow", "--g", "1,0,1", "--k", "-1"]);
    let w = json(&["heisenberg", "--m", "3", "--n", "3", "--l", "3", "inv", "--g", "1,0,1"]);
    assert_eq!(v["result"], w["result"]);
    let v = json(&["heisenberg", "--m", "3", "--n", "3", "--l", "3", "word", "--word", "ABab"]);
    assert_eq!(v["result"]["image"], serde_json::json!({"a": 0, "c": 1, "b": 0}));
    assert_eq!(call(&["heisenberg", "--m", "3", "--n", "3", "--l", "3", "mul", "--g", "1,0,0"]).0, EXIT_USAGE);
}

#[test]
fn dessin_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("x3.dot");
    let js = dir.path().join("x3.json");
    let v = json(&["dessin", "--n", "3", "--out", dot.to_str().unwrap(), "--json", js.to_str().unwrap()]);
    assert_eq!(v["counts"]["edges"], 27);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["adjacency"]["white_rule_ground_truth_holds"], true);
    let text = std::fs::read_to_string(&dot).unwrap();
    let graph = heiscurve::dessin::parse_dot(&text).unwrap();
    assert_eq!(graph.edges.len(), 27);
    let d = heiscurve::dessin::Dessin::from_json(&std::fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(d.dot_graph(), graph);
}

#[test]
fn formats() {
    let (_, tsv, _) = call(&["--format", "tsv", "genus", "--m", "3", "--n", "3", "--l", "1"]);
    assert!(tsv.starts_with("key\tvalue\n"));
    assert!(tsv.lines().any(|l| l == "genus\t1"));
    let (_, text, _) = call(&["genus", "--m", "3", "--n", "3", "--l", "1", "--format", "text"]);
    assert!(text.lines().any(|l| l.starts_with("genus") && l.ends_with(" 1")));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["cuspidal", "--n", "5"];
    assert_eq!(call(&args).1, call(&args).1);
    let args = ["verify", "--quick", "--criteria", "5,6"];
    assert_eq!(call(&args).1, call(&args).1);
}

#[test]
fn verify_quick_succeeds() {
    let (code, out, _) = call(&["verify", "--quick", "--format", "text"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(!out.contains(" FAIL "));
    assert!(out.lines().last().unwrap().contains("fail 0"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_heiscurve");
    let status = |args: &[&str], env: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args);
        if let Some(limit) = env {
            c.env(heiscurve_cli::GUARD_ENV, limit);
        }
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(status(&["genus", "--m", "2", "--n", "2", "--l", "1"], None), EXIT_OK);
    assert_eq!(status(&["genus", "--m", "0", "--n", "2", "--l", "1"], None), EXIT_USAGE);
    assert_eq!(status(&["homology", "--n", "4"], Some("10")), EXIT_GUARD);
    assert_eq!(status(&["homology", "--n", "4", "--force"], Some("10")), EXIT_OK);
    assert_ne!(EXIT_FAIL, EXIT_OK);
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn walkup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walkup")).args(args).output().expect("binary runs")
}

fn walkup_stdin(args: &[&str], input: &[u8]) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_walkup"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_a541_reports_kbar_and_boundary() {
    let out = walkup(&["verify", "A5_41"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["walkup"]["Kbar"], true);
    assert_eq!(v["dim"], 5);
    assert_eq!(v["boundary"]["f_vector"], serde_json::json!([41, 820, 2050, 2255, 902]));
    assert_eq!(v["boundary"]["aut_equality"], true);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_nonball_example() {
    let v = json(&walkup(&["verify", "nonball_example"]));
    assert_eq!(v["stacked"]["ball"], false);
    assert_eq!(v["pseudomanifold"]["dual_graph_tree"], true);
}

#[test]
fn verify_catalog_manifold() {
    let out = walkup(&["verify", "N4_26"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["betti"]["gf2"], serde_json::json!([1, 14, 0, 14, 1]));
    assert_eq!(v["orientable"], false);
    assert_eq!(v["aut"]["structure"], "Z_13");
    assert_eq!(v["type"]["homeomorphism_type"], "(S³⋊S¹)^#14 twisted");
    assert_eq!(v["tight_certificate"]["field"], "gf2");
    assert_eq!(v["bounds"]["pair_equality"], true);
    let skips = v["skips"].as_array().unwrap();
    assert!(skips.iter().any(|s| s["stage"] == "tight_bruteforce" && s["kind"] == "capacity"));
}

#[test]
fn malformed_facet_file_is_an_input_error_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.facets");
    fs::write(&path, "0 1 2\n0 1 q\n").unwrap();
    let out = walkup(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2, column 5"), "{}", stderr(&out));
}

#[test]
fn unknown_input_is_an_input_error() {
    assert_eq!(walkup(&["verify", "no_such_entry_or_file"]).status.code(), Some(2));
    assert_eq!(walkup(&["export", "Z9_99"]).status.code(), Some(2));
}

#[test]
fn table1_matches_and_is_deterministic() {
    let a = walkup(&["table1"]);
    let b = walkup(&["table1"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("24/24 cells match"));
    let j = walkup(&["table1", "--json"]);
    assert_eq!(json(&j)["matches"], true);
}

#[test]
fn table1_detects_corrupted_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.json");
    fs::write(&path, r#"{"N4_21": {"chi": -15}}"#).unwrap();
    let out = walkup(&["table1", "--expected", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH N4_21 chi: expected -15, got -14"), "{}", stdout(&out));
    fs::write(&path, r#"{"N4_21": {"bogus": 1}}"#).unwrap();
    assert_eq!(walkup(&["table1", "--expected", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn construct_from_catalog_family_equals_export() {
    let built = walkup(&["construct", "A5_41_tree_family"]);
    assert_eq!(built.status.code(), Some(0));
    let exported = walkup(&["export", "A5_41"]);
    assert_eq!(built.stdout, exported.stdout);
    assert_eq!(stdout(&built).lines().count(), 246);
}

#[test]
fn construct_reports_broken_tree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.tree");
    fs::write(&path, "1 3 3\ne 0 1\ne 1 2\nt 0 0 1\nt 1 1 2\nt 2 0 2\n").unwrap();
    let out = walkup(&["construct", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("InducedSubtrees: FAIL"), "{}", stdout(&out));
    assert!(stdout(&out).contains("tree: 2"), "{}", stdout(&out));
    let out = walkup(&["construct", path.to_str().unwrap(), "--json"]);
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["hypotheses"]["conditions"][0]["witnesses"][0]["tree"], 2);
}

#[test]
fn decompose_then_construct_round_trips() {
    for name in ["A5_21", "B5_21", "B5_26", "A5_41"] {
        let family = walkup(&["decompose", name]);
        assert_eq!(family.status.code(), Some(0));
        let built = walkup_stdin(&["construct", "-"], &family.stdout);
        assert_eq!(built.status.code(), Some(0), "{}", stderr(&built));
        assert_eq!(built.stdout, walkup(&["export", name]).stdout, "{name}");
    }
}

#[test]
fn decompose_rejects_non_neighborly_input() {
    assert_eq!(walkup(&["decompose", "standard_ball(4)"]).status.code(), Some(0));
    assert_eq!(walkup(&["decompose", "nonball_example"]).status.code(), Some(2));
}

#[test]
fn verify_json_is_deterministic_outside_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let a = strip(json(&walkup(&["verify", "M4_21"])));
    let b = strip(json(&walkup(&["verify", "M4_21"])));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let keys: Vec<&String> = a.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn strict_turns_capacity_skips_into_exit_3() {
    assert_eq!(walkup(&["verify", "M4_21"]).status.code(), Some(0));
    assert_eq!(walkup(&["verify", "M4_21", "--strict"]).status.code(), Some(3));
    assert_eq!(walkup(&["verify", "S4_6", "--strict"]).status.code(), Some(0));
    let big = walkup(&["aut", "standard_sphere(63)"]);
    assert_eq!(big.status.code(), Some(0));
    assert_eq!(json(&big)["skips"][0]["kind"], "capacity");
    assert_eq!(walkup(&["aut", "standard_sphere(63)", "--strict"]).status.code(), Some(3));
}

#[test]
fn small_sphere_runs_exhaustive_tightness() {
    let v = json(&walkup(&["verify", "S4_6"]));
    assert_eq!(v["tight_bruteforce"]["gf2"], true);
    assert_eq!(v["tight_certificate"]["tight"], true);
    assert_eq!(v["type"]["homeomorphism_type"], "S⁴");
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "tight_certificate_matches_bruteforce"));
}

#[test]
fn orbit_export_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b526.orbit");
    let out = walkup(&["export", "B5_26", "--orbit", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&path).exists());
    let v = json(&walkup(&["verify", path.to_str().unwrap()]));
    assert_eq!(v["num_facets"], 91);
    assert_eq!(v["input"]["source"], "file");
    let catalog = json(&walkup(&["verify", "B5_26"]));
    assert_eq!(v["input"]["sha256"], catalog["input"]["sha256"]);
}

#[test]
fn generator_inputs_use_the_seed() {
    let a = json(&walkup(&["verify", "random_stacked_sphere(4,8)", "--seed", "3"]));
    let b = json(&walkup(&["verify", "random_stacked_sphere(4,8)", "--seed", "3"]));
    assert_eq!(a["input"]["sha256"], b["input"]["sha256"]);
    assert_eq!(a["stacked"]["sphere"], true);
    assert_eq!(a["chi"], 2);
    assert_eq!(a["walkup"]["K"], true);
}

#[test]
fn homology_and_aut_commands() {
    let out = walkup(&["homology", "N4_21", "--field", "q", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("betti.q: [1,8,0,7,0]"), "{text}");
    assert!(text.contains("orientable: false"));
    let aut = json(&walkup(&["aut", "M4_41"]));
    assert_eq!(aut["aut"]["order"], 41);
    assert_eq!(aut["aut"]["structure"], "Z_41");
}

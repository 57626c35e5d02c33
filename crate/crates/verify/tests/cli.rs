use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use eqtrees_verify::scenario::parse_check_list;
use eqtrees_verify::{parse_scenario, run_scenario, RunConfig, Verdict};
use serde_json::{json, Value};

fn scenario(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(file)
}

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().unwrap()
}

#[test]
fn passing_run_writes_both_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("r.json");
    let md_path = dir.path().join("r.md");
    let out = verify(&[
        scenario("c2_free4.scn").to_str().unwrap(),
        "--check",
        "isovariant-wedge",
        "--check",
        "weyl-identity",
        "--json",
        json_path.to_str().unwrap(),
        "--md",
        md_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report["failed"], json!(false));
    assert_eq!(report["scenario"]["group_order"], json!(2));
    assert_eq!(report["scenario"]["orbit_sizes"], json!([2, 2]));
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["isovariant-wedge", "weyl-identity"]);
    assert_eq!(report["checks"][1]["verdict"], json!("REPORT-ONLY"));
    assert_eq!(report["checks"][1]["kind"], json!("report-only"));
    assert!(report["checks"][0].get("millis").is_none());
    let md = std::fs::read_to_string(&md_path).unwrap();
    assert!(md.contains("| isovariant-wedge | PASS |"));
    assert!(md.contains("## weyl-identity"));
}

#[test]
fn markdown_goes_to_stdout_without_outputs() {
    let out = verify(&[scenario("trivial4.scn").to_str().unwrap(), "--check", "partition-homology", "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.starts_with("# Verification report"));
    assert!(md.contains("| check | verdict | summary | ms |"));
}

#[test]
fn bad_inputs_exit_with_usage_status() {
    let missing = verify(&["/nonexistent/x.scn"]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown = verify(&[scenario("trivial3.scn").to_str().unwrap(), "--check", "no-such-check"]);
    assert_eq!(unknown.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scn");
    std::fs::write(&bad, "group=\"(1 2)\"\ngset=\"G/e + H/e\"\n").unwrap();
    let out = verify(&[bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 13"));

    let guard = verify(&[scenario("trivial3.scn").to_str().unwrap(), "--guard", "nonsense"]);
    assert_eq!(guard.status.code(), Some(2));
}

#[test]
fn tight_guard_skips_instead_of_failing() {
    let out = verify(&[
        scenario("trivial5.scn").to_str().unwrap(),
        "--check",
        "partition-homology",
        "--guard",
        "partition_points=4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SKIPPED"));
}

#[test]
fn psl27_subgroup_lattice_of_trivial_subgroup() {
    let text = std::fs::read_to_string(scenario("psl27_lattice.scn")).unwrap();
    let s = parse_scenario(&text).unwrap();
    assert_eq!(s.group.order(), 168);
    let report = run_scenario(&s, RunConfig::default());
    let outcome = report.outcome("subgroup-lattice").unwrap();
    assert_eq!(outcome.verdict, Verdict::Pass, "{}", outcome.summary);
    let classes = outcome.payload["classes"].as_array().unwrap();
    // 15 conjugacy classes of subgroups, 14 proper.
    assert_eq!(classes.len(), 14);
    let trivial = classes.iter().find(|c| c["order"] == json!(1)).unwrap();
    assert_eq!(trivial["homology"]["betti"], json!([[1, 48], [2, 48]]));
    assert_eq!(trivial["homology"]["torsion"], json!([]));
}

#[test]
fn sampled_checks_depend_only_on_seed() {
    let text = std::fs::read_to_string(scenario("c2_orbit_point.scn")).unwrap();
    let mut s = parse_scenario(&text).unwrap();
    s.checks = parse_check_list("tree-homeo-roundtrip").unwrap();
    let run = |seed| run_scenario(&s, RunConfig { seed, samples: 20, workers: 1 }).to_json();
    assert_eq!(run(7), run(7));
    assert_ne!(run(7), run(8));
}

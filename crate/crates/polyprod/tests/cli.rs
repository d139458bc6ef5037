//! Drives the binary end to end: golden outputs, exit codes, and
//! byte-for-byte determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_polyprod")
}

fn tmp() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_tmp(name: &str, contents: &str) -> PathBuf {
    let path = tmp().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn group_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("data/groups/{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command failed: {:?}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn boundary_triangle() -> PathBuf {
    write_tmp(
        "boundary_triangle.json",
        r#"{"n": 3, "facets": [[1,2],[1,3],[2,3]]}"#,
    )
}

fn square_text() -> PathBuf {
    write_tmp("square.txt", "4\n1 2\n2 3\n3 4\n1 4\n")
}

#[test]
fn complex_analyze_boundary_triangle() {
    let report = run_json(&[
        "complex",
        "--complex",
        boundary_triangle().to_str().unwrap(),
    ]);
    let r = &report["result"];
    assert_eq!(r["n"], 3);
    assert_eq!(r["is_flag"], false);
    assert_eq!(r["minimal_nonfaces"], serde_json::json!([[1, 2, 3]]));
    assert_eq!(r["euler_characteristic"], 0);
    assert_eq!(r["f_vector"], serde_json::json!([3, 3]));
    assert_eq!(report["command"], "complex");
    assert!(
        report["inputs"]["complex"]["sha256"]
            .as_str()
            .unwrap()
            .len()
            == 64
    );
}

#[test]
fn complex_analyze_square_plain_text() {
    let report = run_json(&["complex", "--complex", square_text().to_str().unwrap()]);
    assert_eq!(report["result"]["is_flag"], true);
    assert_eq!(report["result"]["minimal_nonfaces"], serde_json::json!([]));
}

#[test]
fn malformed_complex_exits_2() {
    let path = write_tmp("broken.json", r#"{"n": 3, "facets": [[1,2"#);
    let out = run(&["complex", "--complex", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["complex", "--complex", "/nonexistent/nowhere.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn polyprod_rank_triple() {
    let k0 = write_tmp("three_points.json", r#"{"n": 3, "facets": [[1],[2],[3]]}"#);
    let report = run_json(&[
        "polyprod",
        "--complex",
        k0.to_str().unwrap(),
        "--marks",
        "2,2,2",
        "--mode",
        "rank",
    ]);
    let r = &report["result"];
    assert_eq!(r["closed"], 5);
    assert_eq!(r["recurrence"], 5);
    assert_eq!(r["oracle"], 5);
    assert_eq!(r["agree"], true);
}

#[test]
fn polyprod_homology_two_points() {
    let k0 = write_tmp("two_points.json", r#"{"n": 2, "facets": [[1],[2]]}"#);
    let report = run_json(&[
        "polyprod",
        "--complex",
        k0.to_str().unwrap(),
        "--marks",
        "2,3",
        "--mode",
        "homology",
    ]);
    let groups = report["result"]["reduced_homology"].as_array().unwrap();
    assert_eq!(groups[1]["betti"], 2);
    assert_eq!(groups[1]["torsion"], serde_json::json!([]));
}

#[test]
fn polyprod_classify_witness() {
    let report = run_json(&[
        "polyprod",
        "--complex",
        boundary_triangle().to_str().unwrap(),
        "--marks",
        "2,2,2",
        "--mode",
        "classify",
    ]);
    let r = &report["result"];
    assert_eq!(r["aspherical"], false);
    assert_eq!(r["witness"], serde_json::json!([1, 2, 3]));
    assert_eq!(r["verified_sphere_degree"], 2);
}

#[test]
fn polyprod_splitting_agrees() {
    let report = run_json(&[
        "polyprod",
        "--complex",
        square_text().to_str().unwrap(),
        "--marks",
        "2,2,2,2",
        "--mode",
        "splitting",
    ]);
    assert_eq!(report["result"]["agree"], true);
}

#[test]
fn polyprod_mark_mismatch_exits_3() {
    let out = run(&[
        "polyprod",
        "--complex",
        boundary_triangle().to_str().unwrap(),
        "--marks",
        "2,2",
        "--mode",
        "homology",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn polyprod_cell_cap_exits_5() {
    let out = Command::new(bin())
        .args([
            "polyprod",
            "--complex",
            boundary_triangle().to_str().unwrap(),
            "--marks",
            "2,2,2",
            "--mode",
            "homology",
        ])
        .env("POLYPROD_MAX_CELLS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn group_tc_q8() {
    let report = run_json(&[
        "group",
        "--group",
        group_file("q8").to_str().unwrap(),
        "--mode",
        "tc",
    ]);
    let r = &report["result"];
    assert_eq!(r["tc_class"], 3);
    assert_eq!(
        r["is_k_tc"][0],
        serde_json::json!({"k": 2, "is_k_tc": false})
    );
    assert_eq!(r["equivalences"]["all_agree"], true);
    assert_eq!(r["equivalences"]["transitive_commuting"], false);
}

#[test]
fn group_series_s3() {
    let report = run_json(&[
        "group",
        "--group",
        group_file("s3").to_str().unwrap(),
        "--mode",
        "series",
    ]);
    let r = &report["result"];
    assert_eq!(r["stage_orders"], serde_json::json!([6, 3]));
    assert_eq!(r["nilpotency_class"], Value::Null);
    assert_eq!(r["stable_order"], 3);
}

#[test]
fn group_tuples_s3() {
    let report = run_json(&[
        "group",
        "--group",
        group_file("s3").to_str().unwrap(),
        "--mode",
        "tuples",
        "--k",
        "2",
    ]);
    let r = &report["result"];
    assert_eq!(r["count"], "18");
    assert_eq!(r["enumerated"], "18");
    assert_eq!(r["agree"], true);
}

#[test]
fn group_analyze_q8() {
    let report = run_json(&[
        "group",
        "--group",
        group_file("q8").to_str().unwrap(),
        "--mode",
        "analyze",
    ]);
    let r = &report["result"];
    assert_eq!(r["order"], 8);
    assert_eq!(r["abelian"], false);
    assert_eq!(r["nilpotency_class"], 2);
    assert_eq!(r["center"]["order"], 2);
    assert_eq!(r["maximal_abelian_subgroups"].as_array().unwrap().len(), 3);
}

#[test]
fn invalid_group_table_exits_4() {
    let path = write_tmp("notgroup.json", r#"{"cayley": [[0,1],[1,1]]}"#);
    let out = run(&[
        "group",
        "--group",
        path.to_str().unwrap(),
        "--mode",
        "analyze",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

fn s3_maximal_abelian_subgroups_file() -> PathBuf {
    // derive the element indices from the library so the file always
    // matches the bundled s3.json ordering
    let text = std::fs::read_to_string(group_file("s3")).unwrap();
    let s3 = polyprod::io::parse_group(&text, 0).unwrap();
    let subs: Vec<Vec<usize>> = s3
        .maximal_abelian_subgroups()
        .iter()
        .map(|s| s.elements().to_vec())
        .collect();
    write_tmp(
        "s3_maxab.json",
        &serde_json::to_string(&serde_json::json!({ "subgroups": subs })).unwrap(),
    )
}

#[test]
fn extension_refused_for_s3_maximal_abelians() {
    let complex = write_tmp("path4.json", r#"{"n": 4, "facets": [[1,2],[2,3],[3,4]]}"#);
    let report = run_json(&[
        "extension",
        "--group",
        group_file("s3").to_str().unwrap(),
        "--subgroups",
        s3_maximal_abelian_subgroups_file().to_str().unwrap(),
        "--complex",
        complex.to_str().unwrap(),
        "--certify-l",
        "1",
    ]);
    let r = &report["result"];
    assert_eq!(r["extends"], false);
    assert_eq!(r["commutation_graph_edges"], serde_json::json!([]));
    let violation = &r["violation"];
    assert_eq!(violation["edge"], serde_json::json!([1, 2]));
    assert!(violation["left_name"].is_string());
    assert_eq!(r["certificate"]["graph_edgeless"], true);
    assert_eq!(
        r["certificate"]["centralizer_orders"],
        serde_json::json!([2, 2, 2, 3])
    );
}

#[test]
fn extension_granted_for_commuting_factors() {
    let complex = write_tmp("edge2.json", r#"{"n": 2, "facets": [[1,2]]}"#);
    let subgroups = write_tmp("c2c2_factors.json", r#"{"subgroups": [[0,1],[0,2]]}"#);
    let report = run_json(&[
        "extension",
        "--group",
        group_file("c2xc2").to_str().unwrap(),
        "--subgroups",
        subgroups.to_str().unwrap(),
        "--complex",
        complex.to_str().unwrap(),
    ]);
    let r = &report["result"];
    assert_eq!(r["extends"], true);
    assert_eq!(r["violation"], Value::Null);
    assert_eq!(r["commutation_graph_edges"], serde_json::json!([[1, 2]]));
}

#[test]
fn extension_count_mismatch_exits_3() {
    let complex = write_tmp("edge2b.json", r#"{"n": 2, "facets": [[1,2]]}"#);
    let subgroups = write_tmp("one_subgroup.json", r#"{"subgroups": [[0,1]]}"#);
    let out = run(&[
        "extension",
        "--group",
        group_file("c2xc2").to_str().unwrap(),
        "--subgroups",
        subgroups.to_str().unwrap(),
        "--complex",
        complex.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let complex = boundary_triangle();
    let args = [
        "polyprod",
        "--complex",
        complex.to_str().unwrap(),
        "--marks",
        "2,2,2",
        "--mode",
        "homology",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // keys arrive sorted
    let text = String::from_utf8(a.stdout).unwrap();
    let cmd_pos = text.find("\"command\"").unwrap();
    let inputs_pos = text.find("\"inputs\"").unwrap();
    let result_pos = text.find("\"result\"").unwrap();
    let version_pos = text.find("\"version\"").unwrap();
    assert!(cmd_pos < inputs_pos && inputs_pos < result_pos && result_pos < version_pos);
}

#[test]
fn text_format_renders() {
    let out = run(&[
        "complex",
        "--complex",
        boundary_triangle().to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("is_flag: false"));
    assert!(!text.contains('{'));
}

#[test]
fn help_lists_subcommands() {
    let out = run(&["--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["complex", "polyprod", "group", "extension"] {
        assert!(text.contains(sub), "missing subcommand {sub}");
    }
}

#[test]
fn all_bundled_group_files_load() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/groups");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let out = run(&[
            "group",
            "--group",
            path.to_str().unwrap(),
            "--mode",
            "analyze",
        ]);
        assert!(out.status.success(), "{} failed to analyze", path.display());
        count += 1;
    }
    assert_eq!(count, 43);
}

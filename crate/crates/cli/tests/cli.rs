use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn quandles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandles"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_p5_json() {
    let o = quandles(&["classify", "-p", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 78);
    let summary = lines.last().unwrap();
    assert_eq!(summary["summary"], "principal=19 nonprincipal=58");
    assert_eq!(summary["formulas_match"], true);
    assert_eq!(summary["per_family"]["table1.row4"]["count"], 10);

    let first = &lines[0];
    let keys: Vec<&String> = first.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "aut_images",
            "dis_order",
            "family",
            "flags",
            "group",
            "p",
            "params",
            "z_order"
        ]
    );
    assert_eq!(first["family"], "table2.row1");
    assert_eq!(first["group"], "Heis");
    assert_eq!(first["dis_order"], 125);
}

#[test]
fn classify_is_deterministic() {
    let args = ["classify", "-p", "7", "--format", "json"];
    assert_eq!(quandles(&args).stdout, quandles(&args).stdout);
}

#[test]
fn classify_family_filter() {
    let o = quandles(&[
        "classify",
        "-p",
        "7",
        "--family",
        "table2.row3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 19);
    assert!(lines[..18].iter().all(|r| r["family"] == "table2.row3"));

    let o = quandles(&[
        "classify",
        "-p",
        "5",
        "--family",
        "table3.row2",
        "--format",
        "json",
    ]);
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["group"], "G8");
}

#[test]
fn classify_other_formats() {
    let o = quandles(&["classify", "-p", "5", "--format", "tsv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 79);
    assert!(text.starts_with("family\tparams"));
    assert!(text
        .lines()
        .last()
        .unwrap()
        .contains("principal=19 nonprincipal=58"));

    let o = quandles(&["classify", "-p", "5"]);
    assert!(stdout(&o).contains("77 records: principal=19 nonprincipal=58"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["classify", "-p", "9"],
        vec!["classify", "-p", "3"],
        vec!["classify", "-p", "five"],
        vec!["classify", "-p", "5", "--family", "table4.row1"],
        vec!["classify", "-p", "5", "--format", "xml"],
        vec!["verify", "-p", "5", "--level", "medium"],
        vec!["frobnicate"],
    ] {
        let o = quandles(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("records.jsonl");
    let o = quandles(&["classify", "-p", "5", "--format", "json", "-o", s(&path)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 78);
}

#[test]
fn verify_full_p5() {
    let o = quandles(&["verify", "-p", "5", "--level", "full"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pairwise_noniso: 77/77"));

    let o = quandles(&["verify", "-p", "5", "--format", "json", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    let summary = lines.last().unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["level"], "full");
    assert_eq!(summary["pairwise_noniso"], "77/77");
    assert!(summary["witness"].is_null());
    let checks: Vec<&str> = lines.iter().filter_map(|l| l["check"].as_str()).collect();
    for name in [
        "axioms",
        "flags",
        "count_formulas",
        "pairwise_noniso",
        "involutory_reps",
    ] {
        assert!(checks.contains(&name), "{name}");
    }
    let inv = lines
        .iter()
        .find(|l| l["check"] == "involutory_reps")
        .unwrap();
    assert_eq!(inv["bruck_total"], 7);
}

#[test]
fn verify_json_stream_is_deterministic() {
    let args = ["verify", "-p", "5", "--format", "json"];
    let strip = |o: Output| {
        let mut lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
        lines.pop();
        lines
    };
    assert_eq!(strip(quandles(&args)), strip(quandles(&args)));
}

#[test]
fn verify_quick_p7() {
    let o = quandles(&["verify", "-p", "7", "--level", "quick", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    let noniso = lines
        .iter()
        .find(|l| l["check"] == "pairwise_noniso")
        .unwrap();
    assert_eq!(noniso["passed"], true);
    assert_eq!(noniso["by_coset_iso"], 0);
    assert_eq!(noniso["by_bruteforce"], 0);
    assert_eq!(lines.last().unwrap()["records"], 139);
}

#[test]
fn verify_catches_a_corrupted_record() {
    let o = quandles(&[
        "verify",
        "-p",
        "5",
        "--level",
        "full",
        "--inject-corrupt",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let lines = json_lines(&o);
    let summary = lines.last().unwrap();
    assert_eq!(summary["passed"], false);
    assert_eq!(summary["witness"]["family"], "table2.row1");
    assert_eq!(summary["witness"]["check"], "flags");
    // The corrupted quandle duplicates a non-faithful record.
    let noniso = lines
        .iter()
        .find(|l| l["check"] == "pairwise_noniso")
        .unwrap();
    assert_eq!(noniso["isomorphic"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_budget_gives_partial_report() {
    let o = quandles(&["verify", "-p", "7", "--budget", "0.001", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let summary = json_lines(&o).pop().unwrap();
    assert_eq!(summary["budget_exceeded"], true);
    assert_eq!(summary["passed"], false);
}

#[test]
fn inspect_examples() {
    let dir = TempDir::new().unwrap();
    let r3 = write(&dir, "r3.txt", "3\n0 2 1\n2 1 0\n1 0 2\n");
    let o = quandles(&["inspect", s(&r3)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("connected latin faithful, |dis|=3"), "{text}");
    assert!(text.contains("|lmlt|: 6"));
    assert!(text.contains("minimal generating size: 2"));

    let trivial = write(&dir, "t.txt", "3\n0 1 2\n0 1 2\n0 1 2\n");
    let text = stdout(&quandles(&["inspect", s(&trivial)]));
    assert!(text.contains("not connected (n>1)"), "{text}");
    assert!(text.contains("not faithful"));

    let o = quandles(&["inspect", s(&r3), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dis_order"], 3);
    assert_eq!(v["z_dis_order"], 3);
    assert_eq!(v["gamma1_blocks"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["zeta_blocks"], serde_json::json!([3]));
}

#[test]
fn inspect_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let malformed = write(&dir, "m.txt", "3\n0 1 2\n0 x 2\n0 1 2\n");
    let o = quandles(&["inspect", s(&malformed)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let not_quandle = write(&dir, "nq.txt", "2\n1 0\n0 1\n");
    let o = quandles(&["inspect", s(&not_quandle)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = quandles(&["inspect", "/nonexistent/q.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let o = quandles(&["enumerate", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("connected: 1"));
    let o = quandles(&["enumerate", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["all"].as_u64(), v["connected"].as_u64()),
        (Some(22), Some(3))
    );
    let o = quandles(&["enumerate", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn iso_of_files() {
    let dir = TempDir::new().unwrap();
    let r3 = write(&dir, "a.txt", "3\n0 2 1\n2 1 0\n1 0 2\n");
    // R3 with 0 and 1 swapped; every relabelling of R3 gives the same table.
    let relabelled = write(&dir, "b.txt", "3\n0 2 1\n2 1 0\n1 0 2\n");
    let trivial = write(&dir, "c.txt", "3\n0 1 2\n0 1 2\n0 1 2\n");
    let o = quandles(&["iso", s(&r3), s(&relabelled), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["isomorphic"], true);
    let o = quandles(&["iso", s(&r3), s(&trivial)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not isomorphic"));
}

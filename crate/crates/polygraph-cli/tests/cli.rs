//! End-to-end tests of the polygraph binary: subcommands, file outputs,
//! expectation checking, exit codes, and the cache negative control.

use std::path::Path;
use std::process::{Command, Output};

fn polygraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polygraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn construct_named_q4k3_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = polygraph(&[
        "construct",
        "--named",
        "Q4K3",
        "--no-cache",
        "--out",
        dir.path().to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["order"], 186);
    assert_eq!(payload["certificate"]["diameter"], 4);
    assert_eq!(payload["certificate"]["max_degree"], 5);
    assert!(dir.path().join("q4k3.edgelist").exists());
    assert!(dir.path().join("q4k3.certificate.json").exists());
    assert!(dir.path().join("q4k3.plan.json").exists());
}

#[test]
fn construct_family_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let out = polygraph(&[
        "construct",
        "--family",
        "gh",
        "--q",
        "3",
        "--no-cache",
        "--out",
        dir.path().to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["order"], 728);
    assert_eq!(payload["certificate"]["girth"], 12);
    assert_eq!(payload["certificate"]["diameter"], 6);
}

#[test]
fn construct_rejects_non_prime_power() {
    let out = polygraph(&["construct", "--family", "gq", "--q", "6", "--no-cache"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr(&out).lines().last().unwrap())
        .expect("machine-readable error JSON");
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("not a prime power"));
}

#[test]
fn verify_expectations() {
    let dir = tempfile::tempdir().unwrap();
    // C_7 as an edge list
    let path = dir.path().join("c7.edgelist");
    let mut text = String::new();
    for i in 0..7u32 {
        let j = (i + 1) % 7;
        text.push_str(&format!("{} {}\n", i.min(j), i.max(j)));
    }
    std::fs::write(&path, text).unwrap();

    let ok = polygraph(&[
        "verify",
        path.to_str().unwrap(),
        "--expect-order",
        "7",
        "--expect-diameter",
        "3",
    ]);
    assert_eq!(ok.status.code(), Some(0), "stderr: {}", stderr(&ok));

    let bad = polygraph(&["verify", path.to_str().unwrap(), "--expect-diameter", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn verify_disconnected_reports_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.dimacs");
    std::fs::write(&path, "p edge 4 2\ne 1 2\ne 3 4\n").unwrap();
    let out = polygraph(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("disconnected"));
}

#[test]
fn export_triangle_to_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("k3.edgelist");
    std::fs::write(&input, "0 1\n0 2\n1 2\n").unwrap();
    let output = dir.path().join("k3.g6");
    let out = polygraph(&[
        "export",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "graph6",
        "--out",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(std::fs::read_to_string(&output).unwrap(), "Bw");
}

#[test]
fn export_roundtrip_through_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("h2.edgelist");
    let dm = dir.path().join("h2.dimacs");
    let back = dir.path().join("h2-back.edgelist");
    let out = polygraph(&[
        "export", "--family", "gh", "--q", "2", "--no-cache",
        "--format", "edgelist", "--out", el.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let out = polygraph(&[
        "export", "--input", el.to_str().unwrap(),
        "--format", "dimacs", "--out", dm.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = polygraph(&[
        "export", "--input", dm.to_str().unwrap(),
        "--format", "edgelist", "--out", back.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&el).unwrap(),
        std::fs::read_to_string(&back).unwrap()
    );
}

#[test]
fn field_debug_prints_tables() {
    let out = polygraph(&["field-debug", "--q", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("+ over GF(4)"));
    assert!(text.contains("* over GF(4)"));

    let out = polygraph(&["field-debug", "--q", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let out = polygraph(&["construct", "--named"]);
    assert_eq!(out.status.code(), Some(2));
    let out = polygraph(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_fast_scope_matches() {
    let out = polygraph(&["table", "--scope", "fast", "--no-cache", "--json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row["status"], "match", "row {row}");
    }
    let orders: Vec<u64> = rows
        .iter()
        .map(|r| r["computed_order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![186, 740, 2754, 7860]);
}

#[test]
fn table_detects_poisoned_cache() {
    use polygraph::cache::{graph_key, poison_entry_for_tests, CacheConfig};
    use polygraph::graph::Graph;

    let dir = tempfile::tempdir().unwrap();
    let cache = CacheConfig::new(dir.path());
    // a graph with the right order (728) but wrong structure: checksum is
    // consistent, so only downstream certification can catch it
    let edges: Vec<(u32, u32)> = (0..728u32).map(|i| (i, (i + 1) % 728)).collect();
    let wrong = Graph::from_edges(728, &edges).unwrap();
    poison_entry_for_tests(&cache, &graph_key("gh", 3), &wrong).unwrap();

    let out = polygraph(&[
        "table",
        "--scope",
        "fast",
        "--cache-dir",
        dir.path().to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1), "poisoned cache must fail the table");
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let h3 = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "H3(K3)")
        .unwrap();
    assert_eq!(h3["status"], "mismatch");
}

#[test]
fn verify_constructed_compound() {
    let dir = tempfile::tempdir().unwrap();
    let out = polygraph(&[
        "construct",
        "--named",
        "H3K3",
        "--no-cache",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let graph_file = dir.path().join("h3k3.edgelist");
    let ok = polygraph(&[
        "verify",
        graph_file.to_str().unwrap(),
        "--expect-order",
        "740",
        "--expect-degree",
        "4",
        "--expect-diameter",
        "6",
    ]);
    assert_eq!(ok.status.code(), Some(0), "stderr: {}", stderr(&ok));
}

#[test]
fn construct_is_deterministic() {
    let run = |dir: &Path| {
        let out = polygraph(&[
            "construct",
            "--named",
            "H3K3",
            "--no-cache",
            "--seed",
            "0",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        (
            std::fs::read(dir.join("h3k3.edgelist")).unwrap(),
            std::fs::read(dir.join("h3k3.plan.json")).unwrap(),
        )
    };
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let (g1, p1) = run(d1.path());
    let (g2, p2) = run(d2.path());
    assert_eq!(g1, g2, "graph bytes must be identical across runs");
    assert_eq!(p1, p2, "plan bytes must be identical across runs");
}

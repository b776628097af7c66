use std::path::Path;
use std::process::{Command, Output};

use dot_parser::{ast, canonical};
use tempfile::TempDir;

fn arquiver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arquiver"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_cluster(dir: &Path, name: &str, family: &str, rank: &str, level: &str) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_owned();
    let o = arquiver(&[
        "cluster", "--family", family, "--rank", rank, "--level", level, "--out", &p,
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    p
}

#[test]
fn json_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (family, rank, level) in [("A", "3", "1"), ("D", "5", "1"), ("E", "6", "2")] {
        let first = write_cluster(dir.path(), "q.json", family, rank, level);
        let original = std::fs::read_to_string(&first).unwrap();
        // deleting nothing re-imports and re-exports the document
        let doc: arquiver::document::QuiverDocument = serde_json::from_str(&original).unwrap();
        let again =
            arquiver::document::QuiverDocument::from_quiver(&doc.to_quiver().unwrap()).to_json();
        assert_eq!(again, original);
    }
}

#[test]
fn dot_output_parses() {
    let o = arquiver(&[
        "cluster", "--family", "D", "--rank", "4", "--level", "1", "--format", "dot",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let graph = canonical::Graph::from(ast::Graph::try_from(text.as_str()).expect("valid DOT"));
    assert!(graph.is_digraph);
    assert_eq!(graph.nodes.set.len(), 16);
    let unquote = |s: &str| s.trim_matches('"').to_owned();
    let tau_edges: Vec<_> = graph
        .edges
        .set
        .iter()
        .filter(|e| {
            e.attr
                .elems
                .iter()
                .any(|(k, v)| *k == "label" && unquote(v) == "tau")
        })
        .collect();
    assert_eq!(tau_edges.len(), 16);
    assert!(tau_edges.iter().all(|e| e
        .attr
        .elems
        .iter()
        .any(|(k, v)| *k == "style" && unquote(v) == "dashed")));
    assert!(text.ends_with("}\n") && !text.contains('\r'));
}

#[test]
fn iso_of_a_file_with_itself() {
    let dir = TempDir::new().unwrap();
    let q = write_cluster(dir.path(), "q.json", "A", "3", "1");
    let o = arquiver(&["iso", "--a", &q, "--b", &q]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"], serde_json::json!((0..9).collect::<Vec<_>>()));
}

#[test]
fn iso_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let a = write_cluster(dir.path(), "a.json", "D", "5", "1");
    let b = write_cluster(dir.path(), "b.json", "A", "3", "2");
    let o = arquiver(&["iso", "--a", &a, "--b", &b]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn delete_rows_and_orbits() {
    let dir = TempDir::new().unwrap();
    let q = write_cluster(dir.path(), "q.json", "A", "5", "1");
    let by_rows = arquiver(&["delete", "--in", &q, "--rows", "1,2,4,5"]);
    assert_eq!(by_rows.status.code(), Some(0));
    let doc: arquiver::document::QuiverDocument = serde_json::from_str(&stdout(&by_rows)).unwrap();
    assert_eq!(doc.vertices.len(), 4);
    assert!(doc.meta.covering.is_none());
    assert!(!doc.meta.mesh_validated);

    // τ-orbits of A5 level 1 are the row pairs {1,5}, {2,4}, {3}
    let by_orbits = arquiver(&["delete", "--in", &q, "--orbits", "0,1"]);
    assert_eq!(by_orbits.status.code(), Some(0));
    assert_eq!(stdout(&by_orbits), stdout(&by_rows));
}

#[test]
fn delete_unstable_set_reports_witness() {
    let dir = TempDir::new().unwrap();
    let q = write_cluster(dir.path(), "q.json", "A", "5", "1");
    let o = arquiver(&["delete", "--in", &q, "--rows", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not tau-stable: vertex"));
}

#[test]
fn hom_needs_covering_or_oracle() {
    let dir = TempDir::new().unwrap();
    let q = write_cluster(dir.path(), "q.json", "A", "2", "1");
    let fast = arquiver(&["hom", "--in", &q]);
    let slow = arquiver(&["hom", "--in", &q, "--oracle"]);
    assert_eq!(fast.status.code(), Some(0));
    assert_eq!(stdout(&fast), stdout(&slow));

    let deleted = dir.path().join("d.json");
    let o = arquiver(&[
        "delete",
        "--in",
        &q,
        "--rows",
        "1,2",
        "--out",
        deleted.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = arquiver(&["hom", "--in", deleted.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    let o = arquiver(&[
        "verify", "A", "--u", "3", "--v", "1", "--m", "1", "--n", "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quotient_vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["isomorphic"], true);

    let o = arquiver(&[
        "verify", "D", "--u", "2", "--v", "1", "--m", "5", "--n", "9",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["open_question"].is_string());

    let o = arquiver(&[
        "verify", "A", "--u", "3", "--v", "2", "--m", "1", "--n", "5",
    ]);
    assert_eq!(o.status.code(), Some(1));

    let o = arquiver(&[
        "verify",
        "E7_from_E8",
        "--u",
        "5",
        "--v",
        "3",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphic: yes"));
}

#[test]
fn search_exit_codes() {
    let o = arquiver(&["search", "--source", "E,8,1", "--target", "E,6,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "[]\n");
    let o = arquiver(&["search", "--source", "A,5,1", "--target", "A,1,3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["cluster", "--family", "B", "--rank", "3", "--level", "1"][..],
        &["cluster", "--family", "A", "--rank", "0", "--level", "1"],
        &["cluster", "--family", "A", "--rank", "3", "--level", "0"],
        &["verify", "A", "--u", "3", "--v", "1"],
        &["search", "--source", "E,8", "--target", "E,6,3"],
        &[
            "iso",
            "--a",
            "/nonexistent.json",
            "--b",
            "/nonexistent.json",
        ],
        &["frobnicate"],
    ] {
        assert_eq!(arquiver(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "E6_from_E7", "--u", "6", "--v", "4"];
    assert_eq!(arquiver(&args).stdout, arquiver(&args).stdout);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gbsiso::graphs::{apply_permutation, emit_graph6, parse_graph6, VertexPermutation};
use serde_json::Value;
use tempfile::TempDir;

const PING6: [&str; 2] = ["ECRw", "ECuo"];

fn srg16() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/srg16.g6")
}

fn srg16_lines() -> Vec<String> {
    std::fs::read_to_string(srg16())
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_owned)
        .collect()
}

fn gbsiso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbsiso"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = gbsiso(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).expect("json output")
}

fn write(dir: &TempDir, name: &str, lines: &[&str]) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    path.to_str().unwrap().to_owned()
}

fn relabel(g6: &str, mapping: Vec<usize>) -> String {
    let g = parse_graph6(g6).unwrap();
    emit_graph6(&apply_permutation(&g, &VertexPermutation::new(mapping).unwrap()).unwrap())
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

#[test]
fn orbits_of_six_photons_on_nine_modes() {
    let rows = csv_rows(&ok(&["orbits", "--total", "6", "--modes", "9", "--output", "csv"]));
    assert_eq!(rows.len(), 11);
    let sizes: Vec<u64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(sizes, [84, 630, 756, 84, 504, 504, 36, 252, 72, 72, 9]);
    assert_eq!(rows[1][0], "0^4 1^4 2");
    let zero: Vec<bool> = rows.iter().map(|r| r[2] == "true").collect();
    assert_eq!(
        zero,
        [false, false, false, false, false, false, false, true, true, true, true]
    );
}

#[test]
fn orbits_small_cases() {
    let rows = csv_rows(&ok(&["orbits", "--total", "2", "--modes", "2", "--output", "csv"]));
    assert_eq!(rows.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(), ["1^2", "0 2"]);
    let rows = csv_rows(&ok(&["orbits", "--total", "0", "--modes", "3", "--output", "csv"]));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1], "1");
    assert_eq!(
        gbsiso(&["orbits", "--total", "3", "--modes", "2"]).status.code(),
        Some(1)
    );
}

#[test]
fn single_edge_probabilities() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "edge.g6", &["A_"]);
    let rows = csv_rows(&ok(&["probabilities", &f, "--c", "1/2", "--max-photons", "10"]));
    assert_eq!(rows.len(), 6);
    for (m, row) in rows.iter().enumerate() {
        assert_eq!(row[0], (2 * m).to_string());
        let p: f64 = row[3].parse().unwrap();
        let expected = 0.75 * 0.25f64.powi(m as i32);
        assert!((p - expected).abs() <= 1e-15 * expected, "{m}: {p} vs {expected}");
    }
}

#[test]
fn srg16_vacuum_probability_is_the_prefactor() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g.g6", &[&srg16_lines()[0]]);
    let rows = csv_rows(&ok(&["probabilities", &f, "--c", "1/6.9", "--max-photons", "2"]));
    let vacuum: f64 = rows[0][3].parse().unwrap();
    // Spectrum 6, 2^6, -2^9; one factor sqrt(1 - (c l)^2) per eigenvalue.
    let c = 1.0 / 6.9;
    let factor = |l: f64, mult: i32| (1.0 - (c * l).powi(2)).sqrt().powi(mult);
    let expected = factor(6.0, 1) * factor(2.0, 6) * factor(-2.0, 9);
    assert!((vacuum - expected).abs() <= 1e-12 * expected, "{vacuum} vs {expected}");
}

#[test]
fn certify_srg16_pair() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("certs");
    ok(&[
        "certify",
        srg16().to_str().unwrap(),
        "--c",
        "1/6.9",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    let mut multisets = Vec::new();
    for name in ["srg16-0.cert.json", "srg16-1.cert.json"] {
        let cert: Value = serde_json::from_str(&std::fs::read_to_string(out.join(name)).unwrap()).unwrap();
        let rec = cert["records"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["orbit"] == serde_json::json!([0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1]))
            .expect("orbit 1^4 certified");
        assert_eq!(rec["sum"], "888");
        multisets.push(rec["multiset"].clone());
    }
    multisets.sort_by_key(|m| m.to_string());
    let a = serde_json::json!({"0": 984, "1": 792, "2": 36, "3": 8});
    let b = serde_json::json!({"0": 992, "1": 768, "2": 60});
    let mut expected = vec![a, b];
    expected.sort_by_key(|m| m.to_string());
    assert_eq!(multisets, expected);
}

#[test]
fn certify_empty_graph_has_only_vacuum_weight() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "empty.g6", &["C?"]);
    let out = dir.path().join("out");
    ok(&["certify", &f, "--c", "1/2", "--out-dir", out.to_str().unwrap()]);
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(out.join("empty.cert.json")).unwrap()).unwrap();
    for rec in cert["records"].as_array().unwrap() {
        let vacuum = rec["orbit"].as_array().unwrap().iter().all(|x| x == 0);
        if !vacuum {
            assert_eq!(rec["sum"], "0", "{rec}");
            assert_eq!(rec["probability"], 0.0);
        }
    }
}

#[test]
fn duplicate_labels_get_distinct_files() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    std::fs::create_dir_all(&a).unwrap();
    std::fs::create_dir_all(&b).unwrap();
    std::fs::write(a.join("g.g6"), "ECRw\n").unwrap();
    std::fs::write(b.join("g.g6"), "ECuo\n").unwrap();
    let out = dir.path().join("out");
    let listed = json(&[
        "certify",
        a.join("g.g6").to_str().unwrap(),
        b.join("g.g6").to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
        "--output",
        "json",
    ]);
    let paths: Vec<&str> = listed
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["path"].as_str().unwrap())
        .collect();
    assert_eq!(paths.len(), 2);
    assert_ne!(paths[0], paths[1]);
}

#[test]
fn cached_results_match_fresh_ones() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ping.g6", &PING6);
    let cache = dir.path().join("cache");
    let run = |out: &str, cached: bool| {
        let out = dir.path().join(out);
        let mut args = vec!["certify", &f, "--out-dir", out.to_str().unwrap()];
        if cached {
            args.extend(["--cache-dir", cache.to_str().unwrap()]);
        }
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        ok(&owned.iter().map(String::as_str).collect::<Vec<_>>());
        ["ping-0.cert.json", "ping-1.cert.json"].map(|n| std::fs::read(out.join(n)).unwrap())
    };
    let fresh = run("fresh", false);
    let first = run("first", true);
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let second = run("second", true);
    assert_eq!(fresh, first);
    assert_eq!(fresh, second);
}

#[test]
fn compare_ping_pair() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ping.g6", &PING6);
    let r = json(&["compare", &f, "--output", "json"]);
    assert_eq!(r["report"]["verdict"], "DISTINGUISHED");
    assert_eq!(r["report"]["threshold_orbit"], serde_json::json!([0, 0, 1, 1, 1, 1]));
    assert_eq!(r["report"]["separating_criterion"], "multiset");

    let a = write(&dir, "a.g6", &[PING6[0]]);
    let b = write(&dir, "b.g6", &[PING6[1]]);
    let text = ok(&["compare", &a, &b]);
    assert!(text.contains("DISTINGUISHED"), "{text}");
}

#[test]
fn compare_isomorphic_pair_is_undistinguished() {
    let dir = TempDir::new().unwrap();
    let g = PING6[0];
    let h = relabel(g, vec![5, 3, 1, 0, 2, 4]);
    let f = write(&dir, "iso.g6", &[g, &h]);
    let r = json(&["compare", &f, "--output", "json"]);
    assert_eq!(r["report"]["verdict"], "UNDISTINGUISHED_UP_TO_LIMIT");
    assert_eq!(r["max_total_examined"], 4);
}

#[test]
fn compare_rejects_mismatched_orders() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "mixed.g6", &["A_", PING6[0]]);
    assert_eq!(gbsiso(&["compare", &f]).status.code(), Some(1));
}

fn family_classes(lines: &[&str]) -> Vec<Vec<usize>> {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fam.g6", lines);
    let r = json(&["family", &f, "--c", "1/6.9", "--output", "json"]);
    serde_json::from_value(r["classes"].clone()).unwrap()
}

#[test]
fn family_srg16_splits() {
    let lines = srg16_lines();
    let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
    assert_eq!(family_classes(&refs), vec![vec![0], vec![1]]);
}

#[test]
fn family_of_relabelings_is_one_class() {
    let g = srg16_lines()[0].clone();
    let p1: Vec<usize> = (0..16).rev().collect();
    let p2: Vec<usize> = (0..16).map(|i| (i * 5) % 16).collect();
    let (h1, h2) = (relabel(&g, p1), relabel(&g, p2));
    assert_eq!(family_classes(&[&g, &h1, &h2]), vec![vec![0, 1, 2]]);
}

#[test]
fn family_groups_relabeled_copy_with_original() {
    let lines = srg16_lines();
    let copy = relabel(&lines[0], (0..16).map(|i| (i + 7) % 16).collect());
    assert_eq!(
        family_classes(&[&lines[0], &lines[1], &copy]),
        vec![vec![0, 2], vec![1]]
    );
    // Input order does not change the partition.
    assert_eq!(
        family_classes(&[&copy, &lines[1], &lines[0]]),
        vec![vec![0, 2], vec![1]]
    );
    assert_eq!(
        family_classes(&[&lines[1], &copy, &lines[0]]),
        vec![vec![0], vec![1, 2]]
    );
}

#[test]
fn partial_runs_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ping.g6", &PING6);
    let out = dir.path().join("out");
    let o = gbsiso(&["certify", &f, "--budget", "10", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(out.join("ping-0.cert.json")).unwrap()).unwrap();
    assert!(!cert["skipped"].as_array().unwrap().is_empty());
}

#[test]
fn input_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.g6", &["not a graph!"]);
    assert_eq!(
        gbsiso(&["certify", &bad, "--out-dir", dir.path().to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let empty = write(&dir, "empty.g6", &[]);
    assert_eq!(gbsiso(&["family", &empty]).status.code(), Some(1));
    let missing = dir.path().join("missing.g6");
    assert_eq!(gbsiso(&["compare", missing.to_str().unwrap()]).status.code(), Some(1));
    let f = write(&dir, "ping.g6", &PING6);
    assert_eq!(gbsiso(&["compare", &f, "--max-photons", "3"]).status.code(), Some(1));
    assert_eq!(gbsiso(&["compare", &f, "--c", "1/0"]).status.code(), Some(1));
    assert_eq!(gbsiso(&["compare", &f, "--c", "5"]).status.code(), Some(1));
}

#[test]
fn json_graph_input() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("edge.json");
    std::fs::write(&f, r#"{"order": 2, "edges": [[0, 1]]}"#).unwrap();
    let rows = csv_rows(&ok(&[
        "probabilities",
        f.to_str().unwrap(),
        "--c",
        "1/2",
        "--max-photons",
        "2",
    ]));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][3].parse::<f64>().unwrap(), 0.1875);
}

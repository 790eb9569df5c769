use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const C4: &str = r#"{"vertices":4,"edges":[[0,1,"1"],[1,2,"1"],[2,3,"1"],[3,0,"1"]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclespace"))
        .args(args)
        .env_remove("CYCLESPACE_CAPS")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn cube_nine() {
    let v = json(&["cube", "--n", "9"]);
    assert_eq!(v["q_norm"], "5");
    assert_eq!(v["lambda_lip0"], "5");
    assert_eq!(v["b"].as_array().unwrap().len(), 9);
}

#[test]
fn tc_on_the_four_cycle() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c4.json", C4);
    let problem = write(&dir, "f.json", r#"{"values":{"0":"1","2":"-1"}}"#);
    let v = json(&["tc", "--graph", &graph, "--problem", &problem, "--dual"]);
    assert_eq!(v["norm"], "2");
    let witness = v["witness"].as_array().unwrap();
    assert_eq!(witness.len(), 4);
    let pairing = |w: &Value| w.as_str().unwrap().parse::<i64>().unwrap();
    assert_eq!(pairing(&witness[0]) - pairing(&witness[2]), 2);
}

#[test]
fn wasserstein_on_the_four_cycle() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c4.json", C4);
    let mu = write(&dir, "mu.json", r#"{"values":{"0":"1/2","1":"1/2"}}"#);
    let nu = write(&dir, "nu.json", r#"{"values":{"2":"1"}}"#);
    let v = json(&["wasserstein", "--graph", &graph, "--mu", &mu, "--nu", &nu]);
    assert_eq!(v["distance"], "3/2");
}

#[test]
fn automorphisms_of_the_four_cycle() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c4.json", C4);
    let v = json(&["automorphisms", "--graph", &graph]);
    assert_eq!(v["order"], 8);
    assert!(!v["generators"].as_array().unwrap().is_empty());
}

#[test]
fn invariant_dimension_of_petersen() {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(format!(r#"[{i},{},"1"]"#, (i + 1) % 5));
        edges.push(format!(r#"[{i},{},"1"]"#, i + 5));
        edges.push(format!(r#"[{},{},"1"]"#, i + 5, (i + 2) % 5 + 5));
    }
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "p.json", &format!(r#"{{"vertices":10,"edges":[{}]}}"#, edges.join(",")));
    let v = json(&["invariant-dim", "--graph", &graph]);
    assert_eq!(v["group_order"], 120);
    assert_eq!(v["edges"], 15);
}

#[test]
fn canonical_graph_drops_implied_edges() {
    let dir = TempDir::new().unwrap();
    let metric = write(&dir, "m.json", r#"{"points":3,"d":[["0","1","2"],["1","0","1"],["2","1","0"]]}"#);
    let v = json(&["canonical-graph", "--metric", &metric]);
    assert_eq!(v["vertices"], 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn torus_table_rows() {
    let v = json(&["torus-table", "--n-max", "5"]);
    let rows = v["rows"].as_array().unwrap();
    let got: Vec<(u64, &str, &str, u64)> = rows
        .iter()
        .map(|r| {
            (
                r["n"].as_u64().unwrap(),
                r["p_orth_norm"].as_str().unwrap(),
                r["i_minus_p_orth"].as_str().unwrap(),
                r["dim"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        got,
        vec![(2, "1", "3/2", 0), (3, "19/9", "2", 0), (4, "41/16", "5/2", 0), (5, "69/25", "68/25", 1)]
    );
    assert_eq!(rows[3]["p_min_norm"], "69/25");
}

#[test]
fn torus_min_six() {
    let v = json(&["torus-min", "--n", "6"]);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["p_min_norm"], "109/36");
    assert_eq!(v["i_minus_p_min"], "3");
}

#[test]
fn uniqueness_verdicts() {
    let cases = [("hamming", "3", "2", "unique", 0), ("torus", "4", "2", "unique", 0), ("torus", "5", "2", "non-unique", 1)];
    for (family, n, m, verdict, dim) in cases {
        let v = json(&["uniqueness", "--family", family, "--n", n, "--m", m]);
        assert_eq!(v["verdict"], verdict, "{family} {n} {m}");
        assert_eq!(v["commutant_dimension"], dim, "{family} {n} {m}");
    }
}

#[test]
fn csv_output_is_byte_stable() {
    let args = ["torus-table", "--n-max", "5", "--format", "csv", "--decimal", "6"];
    let first = run(&args);
    assert!(first.status.success());
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    assert!(text.starts_with("n,p_orth_norm,"));
    assert_eq!(text.lines().count(), 5);
    for _ in 0..2 {
        assert_eq!(run(&args).stdout, first.stdout);
    }
}

#[test]
fn errors_are_machine_readable() {
    let cases: [(&[&str], &str); 3] = [
        (&["cube", "--n", "2"], "UnsupportedParameter"),
        (&["torus-table", "--n-max", "12"], "SizeCapExceeded"),
        (&["--caps", "torus=3", "torus-table", "--n-max", "4"], "SizeCapExceeded"),
    ];
    for (args, kind) in cases {
        let out = run(args);
        assert!(!out.status.success(), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], kind, "{args:?}");
        assert!(v["error"]["message"].is_string());
    }
}

#[test]
fn malformed_input_is_reported() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "bad.json", "{not json");
    let out = run(&["automorphisms", "--graph", &graph]);
    assert!(!out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "Parse");

    let out = run(&["automorphisms", "--graph", "/nonexistent/graph.json"]);
    assert!(!out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "Io");
}

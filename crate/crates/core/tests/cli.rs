use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn distbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distbc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("stderr: {}", String::from_utf8_lossy(&o.stderr)))
}

fn write_c6(dir: &Path) -> String {
    let path = dir.join("c6.txt");
    let o = distbc(&["gen", "cycle:6", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_writes_an_edge_list() {
    let o = distbc(&["gen", "grid:2x3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# nodes=6 edges=7 precision=3\n"), "{text}");
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn seeded_gen_is_reproducible() {
    let a = distbc(&["gen", "er:30:0.3", "--weights", "set:1,2,5", "--seed", "9"]);
    let b = distbc(&["gen", "er:30:0.3", "--weights", "set:1,2,5", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn oracle_prints_the_six_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_c6(dir.path());
    let o = distbc(&["oracle", &g]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("node_id,degree,ecc_hop,bc_raw,bc,f_v"));
    assert!(lines.all(|l| l.ends_with(",2,3,4,0.2,3.1622776601683795")), "{text}");
}

#[test]
fn trace_emits_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_c6(dir.path());
    let o = distbc(&["trace", &g, "--arithmetic", "rational", "--phases", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 5 * 6);
    let node5 = rows.iter().find(|r| r["phase"] == 4 && r["node"] == 5).unwrap();
    assert_eq!(node5["D"][3], 2.0);
    assert_eq!(node5["NH"][3], serde_json::json!([4]));
    assert_eq!(node5["PH"][3], serde_json::json!([0]));
}

#[test]
fn run_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = distbc(&["run", "--gen", "grid:4x4", "--shuffle", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["exit_code"], 0);
    assert_eq!(report["runs"][0]["bound_ok"], true);
    for f in ["errors.csv", "nodes.csv", "histogram.csv", "summary.json"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    let nodes = fs::read_to_string(out.join("nodes.csv")).unwrap();
    assert!(nodes.starts_with("node,bc,ecc,T_D,T_C\n"));
    assert_eq!(nodes.lines().count(), 17);
    let errors = fs::read_to_string(out.join("errors.csv")).unwrap();
    assert!(errors.starts_with("phase,global_error\n0,1\n"));
}

#[test]
fn sweep_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep");
    let config = dir.path().join("exp.toml");
    fs::write(
        &config,
        format!(
            "mode = \"reference\"\norder = \"shuffle\"\n\n[graph]\ngenerator = \"er:20:0.3\"\nweights = \"set:1,2,5\"\n\n[output]\ndir = {:?}\n\n[sweep]\ncount = 3\n",
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = distbc(&["run", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for s in 0..3 {
        assert!(out.join(format!("seed-{s}/summary.json")).is_file());
    }
    assert!(out.join("mean_error.csv").is_file());
    let sweep: Value = serde_json::from_str(&fs::read_to_string(out.join("sweep.json")).unwrap()).unwrap();
    assert_eq!(sweep.as_array().unwrap().len(), 3);
}

#[test]
fn phase_cap_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = distbc(&["run", "--gen", "cycle:6", "--max-phases", "3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_json(&o)["error"]["exit_code"], 3);
}

#[test]
fn invalid_graph_file_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 1 1\n1 2 x\n").unwrap();
    let o = distbc(&["oracle", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = error_json(&o);
    assert_eq!(e["error"]["exit_code"], 2);
    assert!(e["error"]["message"].as_str().unwrap().contains("line 2"), "{e}");

    fs::write(&bad, "0 1 1\n2 3 1\n").unwrap();
    assert_eq!(distbc(&["oracle", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(distbc(&["oracle", "/nonexistent/graph.txt"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(distbc(&["run"]).status.code(), Some(2));
    assert_eq!(distbc(&["gen", "torus:3"]).status.code(), Some(2));
    assert_eq!(distbc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(distbc(&["--help"]).status.code(), Some(0));
}

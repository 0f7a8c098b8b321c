use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_planar-lb"));
    cmd.args(args).env_remove("PLANAR_LB_OUT_DIR");
    if let Some(d) = out_dir {
        cmd.env("PLANAR_LB_OUT_DIR", d);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_writes_all_formats() {
    let dir = TempDir::new().unwrap();
    let (j, d, s) = (
        dir.path().join("g.json"),
        dir.path().join("g.dot"),
        dir.path().join("g.svg"),
    );
    let out = bin(
        &[
            "generate",
            "--m",
            "7",
            "--r",
            "3",
            "--T",
            "1",
            "--json",
            path_arg(&j),
            "--dot",
            path_arg(&d),
            "--svg",
            path_arg(&s),
        ],
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());

    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&j).unwrap()).unwrap();
    let nodes = doc["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 147);
    for b in 0..3 {
        let internal = nodes
            .iter()
            .filter(|n| n["block"] == b && n["internal"] == true)
            .count();
        assert_eq!(internal, 25);
    }
    assert_eq!(doc["params"]["T"], 1);

    let dot = std::fs::read_to_string(&d).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches(" -- ").count(), doc["edges"].as_array().unwrap().len());

    let svg = std::fs::read_to_string(&s).unwrap();
    assert_eq!(svg.matches("class=\"boundary\"").count(), 3);
    assert_eq!(svg.matches("class=\"internal\"").count(), 3);
}

#[test]
fn generate_overlays_region() {
    let dir = TempDir::new().unwrap();
    let out = bin(
        &[
            "generate", "--m", "7", "--r", "1", "--T", "1", "--svg", "r.svg", "--region", "3,3",
        ],
        Some(dir.path()),
    );
    assert!(out.status.success());
    let svg = std::fs::read_to_string(dir.path().join("r.svg")).unwrap();
    assert_eq!(svg.matches("fill=\"#000000\" stroke").count(), 9);

    let bad = bin(
        &[
            "generate", "--m", "7", "--r", "1", "--T", "1", "--svg", "r.svg", "--region", "0,3",
        ],
        Some(dir.path()),
    );
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn fool_all_in_report() {
    let out = bin(&["fool", "--m", "7", "--r", "3", "--alg", "all"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = json(&out);
    assert_eq!(rep["l"], 0);
    assert_eq!(rep["D_size"], 147);
    let dstar = rep["Dstar_size"].as_u64().unwrap();
    let want = planar_lb::ratio::ExactRatio::new(147, dstar);
    assert_eq!(rep["ratio"]["num"], want.numer());
    assert_eq!(rep["ratio"]["den"], want.denom());
    let blocks = rep["per_block"].as_array().unwrap();
    assert_eq!(blocks.len(), 3);
    assert!(blocks
        .iter()
        .all(|b| b["forced"] == true && b["certificate"]["color"] == 1));
}

#[test]
fn fool_output_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = [
        "fool",
        "--m",
        "9",
        "--r",
        "2",
        "--alg",
        "value",
        "--strategy",
        "greedy-extension",
        "--seed",
        "5",
    ];
    let mut a = args.to_vec();
    a.extend(["--out", "a.json"]);
    let mut b = args.to_vec();
    b.extend(["--out", "b.json"]);
    assert!(bin(&a, Some(dir.path())).status.success());
    assert!(bin(&b, Some(dir.path())).status.success());
    let x = std::fs::read(dir.path().join("a.json")).unwrap();
    let y = std::fs::read(dir.path().join("b.json")).unwrap();
    assert!(!x.is_empty());
    assert_eq!(x, y);
}

#[test]
fn witness_output_dominates() {
    let out = bin(&["witness", "--m", "14", "--r", "2"], None);
    assert!(out.status.success());
    let doc = json(&out);
    let bits = doc["members"]["bits"].as_array().unwrap();
    assert_eq!(bits.len(), 2 * 14 * 14);
    let size = bits.iter().filter(|b| **b == 1).count() as u64;
    assert_eq!(doc["size"], size);
    assert_eq!(doc["members"]["size"], size);
    assert_eq!(
        doc["internal_member_count"].as_u64().unwrap() + doc["boundary_member_count"].as_u64().unwrap(),
        size
    );
}

#[test]
fn run_exit_codes() {
    let ok = bin(&["run", "--m", "7", "--r", "2", "--alg", "greedy"], None);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["dominating"], true);

    let unknown = bin(&["run", "--m", "7", "--r", "2", "--alg", "nope"], None);
    assert_eq!(unknown.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&unknown.stderr).unwrap();
    assert_eq!(err["error"], "unknown-algorithm");
}

#[test]
fn run_reads_ids_file() {
    let dir = TempDir::new().unwrap();
    let ids: Vec<u32> = (1..=9).rev().collect();
    std::fs::write(dir.path().join("ids.json"), serde_json::to_string(&ids).unwrap()).unwrap();
    let out = bin(
        &[
            "run", "--m", "3", "--r", "1", "--T", "1", "--alg", "all", "--ids", "ids.json",
        ],
        Some(dir.path()),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["set"]["size"], 9);

    std::fs::write(dir.path().join("dup.json"), "[1,1,2,3,4,5,6,7,8]").unwrap();
    let bad = bin(
        &[
            "run", "--m", "3", "--r", "1", "--T", "1", "--alg", "all", "--ids", "dup.json",
        ],
        Some(dir.path()),
    );
    assert_eq!(bad.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(err["error"], "not-bijection");
}

#[test]
fn out_dir_env_resolves_relative_paths() {
    let dir = TempDir::new().unwrap();
    let out = bin(
        &["witness", "--m", "7", "--r", "1", "--out", "w.json", "--svg", "w.svg"],
        Some(dir.path()),
    );
    assert!(out.status.success());
    assert!(dir.path().join("w.json").is_file());
    assert!(dir.path().join("w.svg").is_file());
}

#[test]
fn unwritable_output_names_path() {
    let out = bin(
        &["witness", "--m", "7", "--r", "1", "--out", "/nonexistent/x/w.json"],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "io");
    assert!(err["message"].as_str().unwrap().contains("/nonexistent/x/w.json"));
}

#[test]
fn sweep_emits_csv() {
    let out = bin(&["sweep", "--m", "5,7", "--r", "2", "--alg", "greedy"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], planar_lb::cli::SWEEP_HEADER);
    assert!(lines[1].starts_with("5,2,2,greedy,0,2,"));
    assert!(lines[2].starts_with("7,2,2,greedy,0,2,"));

    let bad = bin(&["sweep", "--m", "5,3", "--r", "2", "--alg", "greedy"], None);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
}

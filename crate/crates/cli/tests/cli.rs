use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_troplanar")).args(args).current_dir(root()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fig1_dot_has_ten_vertices_and_fifteen_edges() {
    let o = run(&["skeletonize", "fixtures/fig1.tri", "--dot"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.contains(" -- ")).count(), 15);
    assert_eq!(s.lines().filter(|l| l.trim().ends_with(';') && !l.contains("--")).count(), 10);
}

#[test]
fn fig2_g_is_enve_loop() {
    let o = run(&["classify", "fixtures/fig2_g.graph"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("NotTroplanar EnveLoopCatalog"));
}

#[test]
fn genus_two_has_two_graphs() {
    let o = run(&["enumerate-graphs", "--genus", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn parse_error_exits_two_with_position() {
    let dir = std::env::temp_dir().join(format!("troplanar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "graph\nn 2\ne 0 x\n").unwrap();
    let o = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.graph:3:5:"));
}

#[test]
fn json_classify_and_witness_files() {
    let dir = std::env::temp_dir().join(format!("troplanar-witness-{}", std::process::id()));
    let o = run(&["classify", "fixtures/fig10.graph", "--json", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "Troplanar");
    let tri = dir.join("witness.tri");
    assert_eq!(v["witness"]["triangulation"], tri.to_str().unwrap());
    let s = run(&["skeletonize", tri.to_str().unwrap(), "--json"]);
    let k: serde_json::Value = serde_json::from_slice(&s.stdout).unwrap();
    assert_eq!(k["certificate"], v["certificate"]);
}

#[test]
fn corpus_override_from_environment() {
    let dir = std::env::temp_dir().join(format!("troplanar-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("genus1.poly"), "polygon\nv 0 0\nv 3 0\nv 0 3\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_troplanar"))
        .args(["census", "--genus", "1"])
        .env("TROPLANAR_CORPUS", &dir)
        .current_dir(root())
        .output()
        .unwrap();
    assert!(o.status.success());
    // The dilated triangle has 79 triangulations, all regular.
    let lines = stdout(&o);
    assert_eq!(lines.lines().count(), 79);
    assert!(lines.lines().all(|l| l.starts_with("0,0;3,0;3,3\t") && l.ends_with("\ttrue\tcircle")));
}

#[test]
fn all_includes_regular_only() {
    let dir = std::env::temp_dir().join(format!("troplanar-enum-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let poly = dir.join("quartic.poly");
    std::fs::write(&poly, "polygon\nv 0 0\nv 4 0\nv 0 4\n").unwrap();
    let poly = poly.to_str().unwrap();
    let reg = run(&["enumerate-tri", poly, "--regular-only"]);
    let all = run(&["enumerate-tri", poly, "--all"]);
    let (r, a) = (stdout(&reg), stdout(&all));
    assert_eq!((r.lines().count(), a.lines().count()), (7422, 7424));
    let a: std::collections::BTreeSet<&str> = a.lines().collect();
    assert!(r.lines().all(|l| a.contains(l)));
}

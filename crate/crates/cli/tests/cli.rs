use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn treedep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treedep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_graph(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_theta_dual_passes() {
    let o = treedep(&["construct", "theta-dual", "2/5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS\tdep 2/5 at edge 0"), "{out}");
    assert!(out.contains("\"family\": \"theta_dual_multigraph\""));
}

#[test]
fn construct_each_family() {
    for (family, target, expect) in [
        ("bipartite", "2/5", "PASS\tdep 2/5"),
        ("theta", "3/5", "PASS\tdensity 3/5"),
        ("planar", "2/3", "PASS\tdep 2/3"),
        ("bipartite", "3/4", "PASS\tdep 3/4"),
    ] {
        let o = treedep(&["construct", family, target]);
        assert_eq!(o.status.code(), Some(0), "{family} {target}: {}", stderr(&o));
        assert!(stdout(&o).contains(expect), "{family} {target}");
    }
    let o = treedep(&["construct", "bipartite", "2/3", "--strategy", "uniform"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS\tdep 2/3"));
}

#[test]
fn planar_refuses_small_targets() {
    let o = treedep(&["construct", "planar", "1/3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dep(G) > 1/3"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    for target in ["2/5", "1/2", "3/7"] {
        let o = treedep(&["construct", "planar", target]);
        assert_eq!(o.status.code(), Some(2), "{target}");
        assert!(stderr(&o).contains("open problem"), "{}", stderr(&o));
    }
    let o = treedep(&["construct", "planar", "1/4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["construct", "bipartite", "5/4"],
        vec!["construct", "bipartite", "0.4"],
        vec!["construct", "cube", "1/2"],
        vec!["verify", "everything"],
        vec!["verify", "oracle", "--budget", "9,18"],
        vec!["frobnicate"],
        vec!["search-planar", "--max-v", "6", "--max-e", "12", "--lo", "1/2", "--hi", "1/3"],
    ] {
        let o = treedep(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(treedep(&["--help"]).status.code(), Some(0));
}

#[test]
fn construct_writes_graph_and_recipe() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n.g");
    let o = treedep(&["construct", "bipartite", "2/3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let recipe: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("n.g.recipe.json")).unwrap()).unwrap();
    assert_eq!(recipe["family"], "bipartite_necklace");
    assert_eq!(recipe["claim"]["value"], "2/3");
    assert_eq!(recipe["claim"]["kind"], "dependence");
    let o = treedep(&["analyze", out.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["dep"], "2/3");
    assert_eq!(report["argmax"], serde_json::json!([0]));
}

#[test]
fn analyze_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "triangle.g", "# a triangle\n3\n0 1 1\n1 2 1\n\n0 2 1\n");
    let o = treedep(&["analyze", &g]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dep\t2/3"));
    assert!(out.contains("argmax\t0 1 2"));
    let o = treedep(&["analyze", &g, "--json"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"tau":"3","edges":[{"u":0,"v":1,"mult":1,"tau_e":"2","density":"2/3"},{"u":1,"v":2,"mult":1,"tau_e":"2","density":"2/3"},{"u":0,"v":2,"mult":1,"tau_e":"2","density":"2/3"}],"dep":"2/3","argmax":[0,1,2]}"#
    );
}

#[test]
fn analyze_rejects_bad_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let disconnected = write_graph(dir.path(), "d.g", "4\n0 1 1\n2 3 1\n");
    let malformed = write_graph(dir.path(), "m.g", "3\n0 1 x\n");
    let missing = dir.path().join("nope.g");
    for path in [disconnected.as_str(), malformed.as_str(), missing.to_str().unwrap()] {
        let o = treedep(&["analyze", path]);
        assert_eq!(o.status.code(), Some(2), "{path}");
        assert!(stderr(&o).starts_with("error:"));
    }
}

#[test]
fn resistance_on_theta() {
    let dir = tempfile::tempdir().unwrap();
    // Θ(1,3,3): hubs 0 and 1, internal vertices 2..5.
    let g = write_graph(
        dir.path(),
        "theta.g",
        "6\n0 1 1\n0 2 1\n2 3 1\n3 1 1\n0 4 1\n4 5 1\n5 1 1\n",
    );
    let o = treedep(&["resistance", &g, "0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3/5");
    assert_eq!(treedep(&["resistance", &g, "0", "9"]).status.code(), Some(2));
    assert_eq!(treedep(&["resistance", &g, "2", "2"]).status.code(), Some(2));
}

#[test]
fn verify_suites_report_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let o = treedep(&[
        "verify",
        "oracle",
        "--seed",
        "5",
        "--corpus",
        "40",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("property\tinstances\tfailures\n"));
    assert!(out.contains("oracle_tau\t40\t0"));
    assert!(out.contains("PASS\toracle"));
    let tsv = fs::read_to_string(dir.path().join("summary.tsv")).unwrap();
    assert!(tsv.contains("oracle_thicket\t40\t0"));
    assert_eq!(fs::read_to_string(dir.path().join("witnesses.json")).unwrap().trim(), "[]");

    let o = treedep(&["verify", "dual", "--max-q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dual_identity\t"));
}

#[test]
fn search_planar_lists_k4() {
    let o = treedep(&["search-planar", "--max-v", "6", "--max-e", "12", "--lo", "1/3", "--hi", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# dep 1/2 |V|=4 |E|=6"), "{out}");
    assert!(out.contains("# dep 5/12 |V|=6 |E|=12"), "{out}");
    let o = treedep(&["search-planar", "--max-v", "5", "--max-e", "9", "--lo", "1/3", "--hi", "17/50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# best-effort search: 0 "));
}

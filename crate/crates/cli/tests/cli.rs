use std::path::Path;
use std::process::{Command, Output};

fn hgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgc")).args(args).env_remove("HGC_CACHE_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn d2check_passes() {
    let o = hgc(&["d2check", "--m", "2", "--n", "5", "--flavor", "A", "--max-v", "3", "--max-h", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn d2check_all_flavors_by_default() {
    let o = hgc(&["d2check", "--m", "3", "--n", "6", "--window", "V=2,H=3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn mc_check_exit_codes() {
    assert_eq!(hgc(&["mc", "check", "--name", "Tomega", "--m", "3", "--n", "6"]).status.code(), Some(0));
    assert_eq!(hgc(&["mc", "check", "--name", "Lomega", "--m", "3", "--n", "7"]).status.code(), Some(0));
    assert_eq!(hgc(&["mc", "check", "--name", "Nope", "--m", "3", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hgc(&["enumerate", "--m", "2", "--n", "4"]).status.code(), Some(2));
    assert_eq!(hgc(&["enumerate", "--n", "5"]).status.code(), Some(2));
    assert_eq!(hgc(&["homology", "--m", "2", "--n", "5", "--degree", "x"]).status.code(), Some(2));
    assert_eq!(hgc(&["verify-all", "--grid", "huge"]).status.code(), Some(2));
    assert_eq!(hgc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hgc(&["diff", "--kind", "full", "--in", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn diff_of_line_is_tadpole() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(
        dir.path(),
        "l.json",
        r#"{"m":2,"n":6,"flavor":"A","internal":0,"hairs":[{"dec":"1"},{"dec":"w"}],"edges":[["h1","h2"]]}"#,
    );
    let o = hgc(&["diff", "--kind", "full", "--in", &l]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["graph"]["internal"], 1);
    // splitting alone kills a graph without internal vertices
    let o = hgc(&["diff", "--kind", "split", "--in", &l]);
    assert!(json(&o)["terms"].as_array().unwrap().is_empty());
}

#[test]
fn enumerate_round_trips_through_diff() {
    let o = hgc(&["enumerate", "--m", "2", "--n", "5", "--max-v", "2", "--max-h", "3", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let slice = &v["slices"][0];
    assert_eq!(slice["degree"], 3);
    assert_eq!(slice["count"].as_u64().unwrap() as usize, slice["graphs"].as_array().unwrap().len());
    assert_eq!(v["window"]["max_v"], 2);
    let dir = tempfile::tempdir().unwrap();
    for g in slice["graphs"].as_array().unwrap() {
        let path = write(dir.path(), "g.json", &g.to_string());
        assert_eq!(hgc(&["diff", "--kind", "full", "--in", &path]).status.code(), Some(0));
    }
}

#[test]
fn homology_reports_certification() {
    let o = hgc(&["homology", "--m", "2", "--n", "5", "--flavor", "Aprime", "--sector", "ut", "--degree", "2..3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["betti"], 1);
        assert_eq!(r["certified"], true);
    }
    assert!(v["uncertified_degrees"].as_array().unwrap().is_empty());
}

#[test]
fn cone_at_3_7() {
    let o = hgc(&["cone", "--m", "3", "--n", "7", "--degree", "2..4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[0], "degree,dim,kernel_dim,image_dim,betti,certified");
    let bettis: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(bettis, ["0", "1", "0"]);
}

#[test]
fn phi_apply_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(
        dir.path(),
        "x.json",
        r#"{"m":2,"n":5,"flavor":"Aprime","internal":1,"hairs":[{"dec":"w"},{"dec":"e"},{"dec":"e"}],"edges":[["h1","v1"],["h2","v1"],["h3","v1"]]}"#,
    );
    let o = hgc(&["phi", "apply", "--in", &x]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["flavor"], "A");
    let o = hgc(&["phi", "verify", "--m", "2", "--n", "5", "--window", "V=2,H=3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn twist_requires_mc_element() {
    let dir = tempfile::tempdir().unwrap();
    let lw = write(
        dir.path(),
        "lw.json",
        r#"{"m":3,"n":7,"flavor":"A","internal":0,"hairs":[{"dec":"w"},{"dec":"w"}],"edges":[["h1","h2"]]}"#,
    );
    let t = write(
        dir.path(),
        "t.json",
        r#"{"m":3,"n":7,"flavor":"A","internal":1,"hairs":[{"dec":"w"},{"dec":"w"},{"dec":"1"}],"edges":[["h1","v1"],["h2","v1"],["h3","v1"]]}"#,
    );
    let l = write(
        dir.path(),
        "l.json",
        r#"{"m":3,"n":7,"flavor":"A","internal":0,"hairs":[{"dec":"1"},{"dec":"w"}],"edges":[["h1","h2"]]}"#,
    );
    assert_eq!(hgc(&["twist", "--pi", &lw, "--in", &t]).status.code(), Some(0));
    // L is nonzero of degree 3
    assert_ne!(hgc(&["twist", "--pi", &l, "--in", &lw]).status.code(), Some(0));
}

#[test]
fn linf_verify_is_seed_deterministic() {
    let args = ["linf", "verify", "--arity", "3", "--m", "2", "--n", "5", "--window", "V=2,H=3", "--seed", "5"];
    let a = hgc(&args);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "1"]);
    let b = hgc(&with_jobs);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = hgc(&["linf", "verify", "--arity", "2", "--m", "3", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parity_table_matches() {
    let o = hgc(&["parity-table", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 25);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_all_subset_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = hgc(&["verify-all", "--grid", "small", "--criteria", "2,3,4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("criterion  3 PASS"));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"m":3,"n":6,"max_v":2,"max_h":2,"format":"csv"}"#);
    let o = hgc(&["--config", &cfg, "enumerate", "--m", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("degree,count,complete,graphs"));
    let bad = write(dir.path(), "bad.json", r#"{"colour":"red"}"#);
    assert_eq!(hgc(&["--config", &bad, "parity-table"]).status.code(), Some(2));
}

#[test]
fn cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["homology", "--m", "2", "--n", "6", "--max-v", "3", "--max-h", "3"];
    let plain = hgc(&args);
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hgc")).args(args).env("HGC_CACHE_DIR", dir.path()).output().unwrap()
    };
    let (first, second) = (run(), run());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_biparcel-tv"));
    c.env_remove("BIPARCEL_TV_TOLERANCE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn generate(dir: &TempDir, name: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let out = run(&["generate", name, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn re(out: &Output) -> f64 {
    json(out)["re"].as_f64().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["validate", "trivial"]).status.code(), Some(0));

    let good = dir.path().join("z2.json");
    assert!(run(&["construct", "catalog", "vec-z2", "--out", s(&good)]).status.success());
    let mut data: Value = serde_json::from_str(&fs::read_to_string(&good).unwrap()).unwrap();
    data["simples"][1]["dim_re"] = Value::from(2.0);
    let broken = dir.path().join("broken.json");
    fs::write(&broken, data.to_string()).unwrap();
    let out = run(&["validate", s(&broken)]);
    assert_eq!(out.status.code(), Some(1));
    let failed: Vec<String> = json(&out)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !c["passed"].as_bool().unwrap())
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert!(failed.contains(&"completeness".to_string()), "{failed:?}");

    let malformed = dir.path().join("bad.json");
    fs::write(&malformed, "{ \"base\": ").unwrap();
    assert_eq!(run(&["validate", s(&malformed)]).status.code(), Some(2));
}

#[test]
fn invariant_values() {
    let dir = TempDir::new().unwrap();
    let d4 = generate(&dir, "boundary_4_simplex");
    let two = generate(&dir, "boundary_4_simplex+boundary_4_simplex");
    let trivial = run(&["invariant", "trivial", s(&d4)]);
    assert_eq!(re(&trivial), 1.0);
    assert_eq!(json(&trivial)["im"].as_f64(), Some(0.0));
    assert!((re(&run(&["invariant", "vec-z2", s(&d4)])) - 0.5).abs() < 1e-12);
    assert!((re(&run(&["invariant", "vec-z2", s(&two)])) - 0.25).abs() < 1e-12);
    let threaded = run(&["invariant", "fibonacci", s(&d4), "--threads", "3"]);
    assert!((re(&threaded) - re(&run(&["invariant", "fibonacci", s(&d4)]))).abs() < 1e-12);
}

#[test]
fn tolerance_from_environment() {
    let dir = TempDir::new().unwrap();
    let d4 = generate(&dir, "boundary_4_simplex");
    let out = bin().args(["invariant", "trivial", s(&d4)]).env("BIPARCEL_TV_TOLERANCE", "0.001").output().unwrap();
    assert_eq!(json(&out)["tolerance"].as_f64(), Some(0.001));
    assert_eq!(run(&["invariant", "trivial", s(&d4), "--tolerance", "0"]).status.code(), Some(2));
}

#[test]
fn moves_check_runs() {
    let dir = TempDir::new().unwrap();
    let d4 = generate(&dir, "boundary_4_simplex");
    let disk = generate(&dir, "sphere_join_unknot_disk");
    let out = run(&["moves-check", "trivial", s(&d4), "--moves", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let trace = json(&out);
    assert_eq!(trace["steps"].as_array().unwrap().len(), 5);
    assert_eq!(trace["max_deviation"].as_f64(), Some(0.0));

    let fib = run(&["moves-check", "fibonacci", s(&d4), "--moves", "3", "--seed", "7"]);
    assert_eq!(fib.status.code(), Some(0));
    assert_eq!(fib.stdout, run(&["moves-check", "fibonacci", s(&d4), "--moves", "3", "--seed", "7"]).stdout);

    let defect = run(&["moves-check", "defect-z4", s(&disk), "--move", "2-6:0,1,3", "--move", "6-2:prev"]);
    assert_eq!(defect.status.code(), Some(0), "{}", String::from_utf8_lossy(&defect.stderr));
    assert_eq!(json(&defect)["steps"][1]["move"], "6-2");
}

#[test]
fn no_applicable_move_exits_3() {
    let dir = TempDir::new().unwrap();
    let d4 = generate(&dir, "boundary_4_simplex");
    // the boundary of the 4-simplex has no surface triangles
    let out = run(&["moves-check", "trivial", s(&d4), "--kinds", "2-6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn generate_and_subdivide() {
    let dir = TempDir::new().unwrap();
    let d4 = generate(&dir, "boundary_4_simplex");
    let text = fs::read_to_string(&d4).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["tets"].as_array().unwrap().len(), 5);
    // generate, load and write again through subdivide's loader is stable
    let again = run(&["generate", "boundary_4_simplex"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
    let sub = run(&["subdivide", s(&d4)]);
    assert_eq!(json(&sub)["tets"].as_array().unwrap().len(), 120);
    assert_eq!(run(&["generate", "no_such_thing"]).status.code(), Some(2));
}

#[test]
fn constructions_feed_the_invariant() {
    let dir = TempDir::new().unwrap();
    let d4 = generate(&dir, "boundary_4_simplex");
    let knot = generate(&dir, "sphere_join_unknot");

    let pointed = dir.path().join("pointed.json");
    let out = run(&["construct", "pointed", "--group", "z2", "--cocycle", "nontrivial", "--base", "chain2", "--out", s(&pointed)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(run(&["validate", s(&pointed)]).status.code(), Some(0));
    assert!(run(&["invariant", s(&pointed), s(&knot)]).status.success());

    let sharp = dir.path().join("sharp.json");
    assert!(run(&["construct", "sharp", "--c", "trivial", "--groupoid", "z2", "--out", s(&sharp)]).status.success());
    assert_eq!(run(&["validate", s(&sharp)]).status.code(), Some(0));
    let sharp: Value = serde_json::from_str(&fs::read_to_string(&sharp).unwrap()).unwrap();
    let vec_z2 = json(&run(&["construct", "catalog", "vec-z2"]));
    // same tables up to renaming simples and moving the grading into the base
    for key in ["simples", "fusion", "tet_plus", "tet_minus"] {
        assert_eq!(sharp[key].as_array().unwrap().len(), vec_z2[key].as_array().unwrap().len(), "{key}");
    }
    for key in ["tet_plus", "tet_minus"] {
        let amps = |v: &Value| -> Vec<(f64, f64)> {
            let mut a: Vec<(f64, f64)> =
                v[key].as_array().unwrap().iter().map(|e| (e["re"].as_f64().unwrap(), e["im"].as_f64().unwrap())).collect();
            a.sort_by(|x, y| x.partial_cmp(y).unwrap());
            a
        };
        assert_eq!(amps(&sharp), amps(&vec_z2));
    }
    assert_eq!(sharp["base"]["objects"].as_array().unwrap().len(), 1);
    // the base is the group Z/2 itself, which the state sum refuses
    let refused = run(&["invariant", s(&dir.path().join("sharp.json")), s(&d4)]);
    assert_eq!(refused.status.code(), Some(1));

    let cochain = dir.path().join("omega.json");
    assert!(run(&["construct", "cochain", "--group", "z3", "--out", s(&cochain)]).status.success());
    let oracle = run(&["oracle-dw", s(&cochain), s(&d4)]);
    assert!((re(&oracle) - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(run(&["oracle-dw", s(&cochain), s(&knot)]).status.code(), Some(1));
}

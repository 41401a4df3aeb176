use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_linarr"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> Value {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{args:?}: {stdout}{stderr}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["version"], linarr_cli::VERSION);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    v["result"].clone()
}

#[test]
fn bipencil22_gives_cube_of_t_minus_one() {
    let r = ok(&["alexander", &data("bipencil22.json")]);
    assert_eq!(r["polynomial"], "(t-1)^3");
    assert_eq!(r["report"]["bound"], 9);
}

#[test]
fn hesse_beta_two() {
    let r = ok(&["betti", "--p", "2", &data("hesse.json")]);
    assert_eq!(r["beta"], 2);
    let r = ok(&["betti", "--p", "3", &data("hesse.json")]);
    assert_eq!(r["beta"], 0);
}

#[test]
fn triangle_has_three_double_points() {
    let r = ok(&["lattice", &data("triangle.json")]);
    assert_eq!(r["multiplicity_counts"], serde_json::json!({"2": 3}));
    for p in r["points"].as_array().unwrap() {
        for c in p["coords"].as_array().unwrap() {
            assert!(c.as_str().unwrap().contains('/'));
        }
    }
}

#[test]
fn a3_has_one_net() {
    let r = ok(&["multinet", "--k", "3", &data("a3.json")]);
    assert_eq!(r["count"], 1);
    assert_eq!(r["found"][0]["level"], "net");
}

#[test]
fn hesse_needs_coordinates_unless_conjectural() {
    let (code, stdout, _) = run(&["alexander", &data("hesse.json")]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["error"]["kind"], "arrangement");
    let r = ok(&["alexander", "--conjectural", &data("hesse.json")]);
    assert_eq!(
        r["polynomial"]["factored"],
        "(t-1)^11 * Phi_2(t)^2 * Phi_4(t)^2"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["betti", &data("hesse.json")]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, stdout, _) = run(&["lattice", "/nonexistent/file.json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["error"]["kind"], "io");
    let (code, stdout, _) = run(&["betti", "--p", "4", &data("hesse.json")]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["error"]["kind"], "resonance");
    let (code, _, _) = run(&["spectrum", "--poly", "y^2+y", "--weights", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["alexander".to_string(), data("bipencil22.json")],
        vec!["lattice".to_string(), data("hesse.json")],
        vec![
            "multinet".to_string(),
            "--k".into(),
            "3".into(),
            data("a3.json"),
        ],
        vec![
            "spectrum".into(),
            "--poly".into(),
            "y^3+z^5".into(),
            "--weights".into(),
            "5,3".into(),
        ],
    ] {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&a);
        assert_eq!(first.0, 0);
        assert_eq!(first, run(&a));
    }
}

#[test]
fn digest_tracks_file_contents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, r#"{"lines":[[1,0,0],[0,1,0],[0,0,1]]}"#).unwrap();
    let p = path.to_str().unwrap();
    let before = linarr_cli::run(&["linarr", "lattice", p]).stdout;
    std::fs::write(&path, r#"{"lines":[[1,0,0],[0,1,0],[0,0,1]] }"#).unwrap();
    let after = linarr_cli::run(&["linarr", "lattice", p]).stdout;
    let d = |s: &str| serde_json::from_str::<Value>(s).unwrap()["input_digest"].clone();
    assert_ne!(d(&before), d(&after));
}

#[test]
fn no_floats_in_output() {
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float {n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    walk(&ok(&["alexander", &data("bipencil22.json")]));
    walk(&ok(&["spectrum", "--poly", "y^4+z^6", "--weights", "3,2"]));
    walk(&ok(&["milnor", "--poly", "y^3+z^4", "--degree", "3"]));
}

#[test]
fn join_of_saved_tables() {
    let dir = tempfile::tempdir().unwrap();
    let t = ok(&["spectrum", "--poly", "y^3", "--weights", "1"]);
    let path = dir.path().join("t.json");
    std::fs::write(&path, t["table"].to_string()).unwrap();
    let p = path.to_str().unwrap();
    let j = ok(&["join", p, p]);
    assert_eq!(j["total_dimension"], 4);
    let direct = ok(&["spectrum", "--poly", "y^3+z^3", "--weights", "1,1"]);
    assert_eq!(j["table"], direct["table"]);
}

#[test]
fn cube_fixtures_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("equal");
    let out = out.to_str().unwrap();
    ok(&["cube", "fixture", "--case", "equal", "--out", out]);
    let levels = ok(&["cube", "levels", &format!("{out}/dx.json")]);
    assert_eq!(levels["levels"].as_array().unwrap().len(), 2);
    let reshape = run(&["cube", "reshape", &format!("{out}/dx.json")]);
    assert_eq!(reshape.0, 0);
    let committed = data("cube/equal/dx.json");
    assert_eq!(
        std::fs::read_to_string(committed).unwrap(),
        std::fs::read_to_string(format!("{out}/dx.json")).unwrap()
    );
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn systems(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "systems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn thomas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thomas")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("thomas-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn decompose_circle_json() {
    let out = thomas(&["decompose", &systems("circle.sys"), "--factor", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let sys = v["systems"].as_array().unwrap();
    assert_eq!(sys.len(), 2);
    for s in sys {
        for e in s["equations"].as_array().unwrap() {
            assert!(e["poly"].is_string() && e["leader"].is_string() && e["admissible"].is_array());
        }
        for q in s["inequations"].as_array().unwrap() {
            assert!(q["poly"].is_string() && q["leader"].is_string());
        }
    }
    assert_eq!(sys[1]["equations"][0]["poly"], "x");
    assert!(v["diagnostics"]["steps"].is_u64());
}

#[test]
fn json_is_deterministic() {
    let args = ["decompose", &systems("pde.sys"), "--factor", "--format", "json"];
    let strip = |mut v: Value| {
        v["diagnostics"]["elapsed_ms"] = Value::Null;
        v
    };
    let a = strip(json(&thomas(&args)));
    let b = strip(json(&thomas(&[&args[..], &["--parallel", "4"]].concat())));
    assert_eq!(a, b);
    let eqs = &a["systems"][0]["equations"];
    assert_eq!(eqs[0]["admissible"], serde_json::json!(["x", "y"]));
    assert_eq!(eqs[1]["admissible"], serde_json::json!(["y"]));
}

#[test]
fn pretty_output_parses_back() {
    let out = thomas(&["decompose", &systems("pde.sys"), "--factor"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# system 2 of 2"));
    assert!(thomas::sysfile::parse(&text).is_ok());
}

#[test]
fn inconsistent_input_exits_with_one() {
    let f = temp_file("bad.sys", "dep x; eq x; eq x - 1;");
    let out = thomas(&["decompose", &f]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    let f = temp_file("undeclared.sys", "dep x;\neq x - y;");
    let out = thomas(&["decompose", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:"));
    assert_eq!(thomas(&["decompose", "/nonexistent/file.sys"]).status.code(), Some(2));
    assert_eq!(thomas(&["eliminate", &systems("cauchy_riemann.sys"), "--block-index", "7"]).status.code(), Some(2));
    assert_eq!(thomas(&["flat", &systems("tank.sys"), "--y", "F1"]).status.code(), Some(2));
    assert_eq!(thomas(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn member_and_eliminate() {
    let cr = systems("cauchy_riemann.sys");
    let out = thomas(&["member", &cr, "--poly", "v[x,x] + v[y,y]", "--format", "json"]);
    assert_eq!(json(&out)["member"], true);
    let out = thomas(&["member", &cr, "--poly", "u[x,x] + u[y,y]", "--blocks", "v;u", "--format", "json"]);
    assert_eq!(json(&out)["member"], true);
    let out = thomas(&["eliminate", &cr, "--block-index", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["systems"][0].as_array().unwrap().len(), 1);
}

#[test]
fn control_queries() {
    let out = thomas(&["invert", &systems("unicycle.sys"), "--factor", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let verdicts: Vec<&str> = v["systems"].as_array().unwrap().iter().map(|s| s["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts.len(), 7);
    assert_eq!(verdicts.iter().filter(|&&s| s == "holds").count(), 1);

    let out = thomas(&["flat", &systems("crane.sys"), "--factor", "--y", "x,z"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with(": flat")).count(), 1);

    let out = thomas(&["observe", &systems("tank.sys"), "--factor", "--x", "F1", "--y", "sV,c", "--format", "json"]);
    assert_eq!(json(&out)["systems"][0]["verdict"], "holds");
}

#[test]
fn per_z_inversion_reports_its_mode() {
    let f = temp_file("perz.sys", "indep t; dep a b y; ranking blocks [a, b] [y]; eq a*b - y; eq b^2 - y[t];");
    let out = thomas(&["invert", &f, "--y", "y", "--z", "a,b", "--format", "json"]);
    assert_eq!(json(&out)["systems"][0]["verdict"], "fails");
    let out = thomas(&["invert", &f, "--y", "y", "--z", "a,b", "--per-z", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["systems"][0]["verdict"], "holds");
    let modes: Vec<&str> =
        v["systems"][0]["witnesses"].as_array().unwrap().iter().map(|w| w["mode"].as_str().unwrap()).collect();
    assert!(modes.contains(&"per-z") && modes.contains(&"one-shot"));
}

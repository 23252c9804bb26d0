use serde_json::{json, Value};
use std::path::Path;
use std::process::{Command, Output};

fn parahk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahk")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn eval(flags: &[&str], input: &Value) -> Output {
    let s = input.to_string();
    let mut args = vec!["eval"];
    args.extend_from_slice(flags);
    args.push(&s);
    parahk(&args)
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/verification_report.schema.json");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&s).expect("schema compiles")
}

fn diag_tangent() -> Value {
    json!({ "Jdot": [[1.0, 0.0], [0.0, -1.0]], "sigmadot": [[0.0, 0.0], [0.0, 0.0]] })
}

#[test]
fn eval_metric_example() {
    let input = json!({
        "point": { "J": [[0.0, -1.0], [1.0, 0.0]], "sigma": [[0.0, 0.0], [0.0, 0.0]] },
        "tangents": [diag_tangent(), diag_tangent()],
        "quantity": "g",
    });
    let o = eval(&[], &input);
    assert_eq!(code(&o), 0);
    assert!((stdout_json(&o)["value"].as_f64().unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn eval_forms_accept_chart_input() {
    let input = json!({
        "point": { "J": { "a": 0.0, "c": 1.0 }, "sigma": { "p": 0.0, "q": 0.0 } },
        "tangents": [{ "chart": [1.0, 0.0, 0.0, 0.0] }, { "chart": [0.0, 1.0, 0.0, 0.0] }],
        "quantity": "omegaI",
    });
    let o = eval(&[], &input);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["value"].is_number());
}

#[test]
fn eval_ads_length_example() {
    let (a, e) = (0.5f64.exp(), 1f64.exp());
    let input = json!({ "plus": [[a, 0.0], [0.0, 1.0 / a]], "minus": [[e, 0.0], [0.0, 1.0 / e]] });
    let o = eval(&["--ads", "length"], &input);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert!((v["re"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((v["im"].as_f64().unwrap() + 0.5).abs() < 1e-12);
    // same element given entrywise over B
    let b = |p: f64, m: f64| json!({ "re": (p + m) / 2.0, "im": (p - m) / 2.0 });
    let entries = json!({ "entries": [[b(a, e), b(0.0, 0.0)], [b(0.0, 0.0), b(1.0 / a, 1.0 / e)]] });
    let o = eval(&["--ads", "length"], &entries);
    assert!((stdout_json(&o)["re"].as_f64().unwrap() - 1.5).abs() < 1e-12);
}

#[test]
fn eval_ads_angle_and_perp() {
    // axes through i at angles 0 and phi in each factor
    let rot = |phi: f64, mu: f64| {
        let (c, s) = ((-phi / 2.0).cos(), (-phi / 2.0).sin());
        let r = [[c, -s], [s, c]];
        let d = [mu, 1.0 / mu];
        // r diag r^T
        let m = |i: usize, j: usize| r[i][0] * d[0] * r[j][0] + r[i][1] * d[1] * r[j][1];
        json!([[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]])
    };
    let (pp, pm) = (std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_3);
    let input = json!({
        "alpha": { "plus": rot(0.0, 2.0), "minus": rot(0.0, 3.0) },
        "beta": { "plus": rot(pp, 1.5), "minus": rot(pm, 2.5) },
    });
    let o = eval(&["--ads", "angle"], &input);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert!((v["re"].as_f64().unwrap() - (pp + pm) / 2.0).abs() < 1e-9);
    assert!((v["im"].as_f64().unwrap() - (pp - pm) / 2.0).abs() < 1e-9);
    let o = eval(&["--ads", "perp"], &input);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert!((v["distance"].as_f64().unwrap() - (pp - pm) / 2.0).abs() < 1e-9);
    assert!((v["angle"].as_f64().unwrap() - (pp + pm) / 2.0).abs() < 1e-9);
    let o = eval(&["--ads", "axis"], &json!({ "plus": rot(0.0, 2.0), "minus": rot(0.0, 3.0) }));
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["direction"].is_array());
}

#[test]
fn eval_maps_and_round_trip() {
    let point = json!({ "chart": [0.3, 1.2, 0.5, -0.7] });
    for m in ["mess", "cc"] {
        let o = eval(&["--map", m], &json!({ "point": point, "tangent": { "chart": [1.0, 0.0, 0.0, 0.0] } }));
        assert_eq!(code(&o), 0);
        let v = stdout_json(&o);
        assert!(v["left"].is_array() && v["differential"]["right"].is_array());
    }
    let o = eval(&["--map", "ctheta"], &json!({ "point": point, "theta": 0.4 }));
    assert_eq!(code(&o), 0);
    // circle output point feeds back as input; a full turn returns the start
    let o = eval(&["--map", "circle"], &json!({ "point": point, "theta": 2.0 }));
    assert_eq!(code(&o), 0);
    let moved = stdout_json(&o)["point"].clone();
    let back = eval(&["--map", "circle"], &json!({ "point": moved, "theta": -2.0 }));
    let o0 = eval(&["--map", "circle"], &json!({ "point": point, "theta": 0.0 }));
    let (a, b) = (stdout_json(&back)["point"].clone(), stdout_json(&o0)["point"].clone());
    for key in ["J", "sigma"] {
        for i in 0..2 {
            for j in 0..2 {
                let d = a[key][i][j].as_f64().unwrap() - b[key][i][j].as_f64().unwrap();
                assert!(d.abs() < 1e-12, "{key}");
            }
        }
    }
    // ctheta without theta names the field
    let o = eval(&["--map", "ctheta"], &json!({ "point": point }));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("theta"));
}

#[test]
fn eval_torus() {
    let o = eval(&["--torus"], &json!({ "point": { "chart": [0.3, 1.2, 0.5, -0.7] }, "t": [0.0, 0.5] }));
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let b = &v["B"];
    let tr = b[0][0].as_f64().unwrap() + b[1][1].as_f64().unwrap();
    assert!(tr.abs() < 1e-12);
    assert_eq!(v["metric_family"].as_array().unwrap().len(), 2);
    assert_eq!(v["metric_family"][0]["metric"][2][2].as_f64().unwrap(), -1.0);
}

#[test]
fn eval_errors() {
    let o = parahk(&["eval", "{\"point\": "]);
    assert_eq!(code(&o), 2);
    let o = eval(&[], &json!({ "point": { "J": { "a": 0.0 } }, "quantity": "g" }));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("point.J.c"));
    let o = eval(&[], &json!({ "point": { "J": [[1.0, 0.0], [0.0, 1.0]] }, "quantity": "g" }));
    assert_eq!(code(&o), 3);
    let o = eval(
        &["--ads", "length"],
        &json!({ "plus": [[1.0, 0.0], [0.0, 1.0]], "minus": [[2.0, 0.0], [0.0, 0.5]] }),
    );
    assert_eq!(code(&o), 3);
    let o = eval(&[], &json!({ "point": { "chart": [0.0, 1.0, 0.0, 0.0] }, "quantity": "nope" }));
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_all_passes_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.json");
    let o = parahk(&[
        "verify",
        "--suite",
        "all",
        "--samples",
        "200",
        "--seed",
        "7",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let table = String::from_utf8_lossy(&o.stdout);
    assert!(table.contains("max residual") && table.contains("0 failed"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(schema().is_valid(&report));
    assert_eq!(report["pass"], json!(true));
    assert_eq!(report["samples"], json!(200));
}

#[test]
fn verify_is_deterministic() {
    let a = parahk(&["verify", "--suite", "ads", "--samples", "30", "--seed", "5", "--format", "json"]);
    let b = parahk(&["verify", "--suite", "ads", "--samples", "30", "--seed", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_coarse_step_fails() {
    let o = parahk(&["verify", "--suite", "phk", "--step", "1e-1", "--samples", "50"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&parahk(&["verify", "--suite", "bogus"])), 4);
    assert_eq!(code(&parahk(&["verify", "--suite", "algebra", "--step", "0.5"])), 2);
    assert_eq!(code(&parahk(&["verify", "--suite", "algebra", "--samples", "0"])), 2);
    assert_eq!(code(&parahk(&["verify", "--suite", "algebra", "--tolerance", "x"])), 2);
}

#[test]
fn tolerance_override_can_fail_a_check() {
    let o = parahk(&[
        "verify",
        "--suite",
        "phk",
        "--samples",
        "5",
        "--tolerance",
        "phk.closedness=0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    let c = v["per_check"].as_array().unwrap().iter().find(|c| c["name"] == "phk.closedness").unwrap();
    assert_eq!(c["tolerance"], json!(0.0));
    assert_eq!(c["pass"], json!(false));
}

#[test]
fn report_merges_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    for (s, f) in [("algebra", "a.json"), ("torus", "t.json")] {
        let o = parahk(&["verify", "--suite", s, "--samples", "20", "--json", &p(f)]);
        assert_eq!(code(&o), 0);
    }
    let o = parahk(&["report", &p("a.json"), &p("t.json"), "--json", &p("m.json")]);
    assert_eq!(code(&o), 0);
    let merged: Value = serde_json::from_str(&std::fs::read_to_string(p("m.json")).unwrap()).unwrap();
    assert!(schema().is_valid(&merged));
    assert_eq!(merged["suite"], json!("algebra+torus"));
    // merging a merged report with itself changes nothing but the name
    let o = parahk(&["report", &p("m.json"), "--format", "json"]);
    let again = stdout_json(&o);
    assert_eq!(again["per_check"], merged["per_check"]);

    std::fs::write(p("bad.json"), "{ not json").unwrap();
    assert_eq!(code(&parahk(&["report", &p("bad.json")])), 2);
}

#[test]
fn schema_rejects_malformed_reports() {
    let s = schema();
    assert!(!s.is_valid(&json!({ "suite": "x" })));
    let bad = json!({
        "suite": "x", "samples": 0, "seed": 1, "step": 1e-4, "max_residual": 0.0,
        "pass": true, "per_check": []
    });
    assert!(!s.is_valid(&bad));
}

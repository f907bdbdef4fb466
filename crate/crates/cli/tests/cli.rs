use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    root.to_string_lossy().into_owned()
}

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn check_reports_predicates() {
    let ws = data("algebra.json");
    let out = ringlab(&["--json", "check", &ws, "--target", "Q3", "--target", "Z0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let q3 = &v["targets"][0];
    assert_eq!(
        (q3["unital"].as_bool(), q3["s-unital"].as_bool()),
        (Some(true), Some(true))
    );
    let z = &v["targets"][1];
    for p in ["unital", "s-unital", "unitary", "firm", "locally-unital"] {
        assert_eq!(z[p].as_bool(), Some(false), "{p}");
    }
}

#[test]
fn check_assertions_set_exit_code() {
    let ws = data("algebra.json");
    let ok = ringlab(&["check", &ws, "--target", "Q3", "--assert", "firm"]);
    assert_eq!(code(&ok), 0);
    let bad = ringlab(&["check", &ws, "--target", "Z0", "--assert", "firm"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"rings\": [\n    {\"label\": }\n  ]\n}\n").unwrap();
    let out = ringlab(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3, column 15"), "{err}");
}

#[test]
fn missing_file_and_unknown_label_are_input_errors() {
    assert_eq!(code(&ringlab(&["check", "/nonexistent/ws.json"])), 4);
    let ws = data("algebra.json");
    assert_eq!(code(&ringlab(&["radical", &ws, "--ring", "nope"])), 4);
    assert_eq!(code(&ringlab(&["radical"])), 4);
}

#[test]
fn solve_verify_round_trip_and_tamper() {
    let ws = data("algebra.json");
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = ringlab(&[
            "separability",
            "solve",
            &ws,
            "--morphism",
            "M2/Q",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(
        code(&ringlab(&[
            "separability",
            "verify",
            &ws,
            a.to_str().unwrap()
        ])),
        0
    );

    let mut cert: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = &mut cert["sigma"][0][0];
    let old = entry.as_str().unwrap().to_string();
    *entry = serde_json::json!(if old == "0/1" { "1/1" } else { "0/1" });
    let t = dir.path().join("tampered.json");
    std::fs::write(&t, serde_json::to_string(&cert).unwrap()).unwrap();
    let out = ringlab(&["--json", "separability", "verify", &ws, t.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(!v["violation"].as_str().unwrap().is_empty());
}

#[test]
fn char_two_group_ring_is_infeasible() {
    let ws = data("algebra.json");
    let out = ringlab(&[
        "separability",
        "solve",
        &ws,
        "--ring",
        "F2C2",
        "--base",
        "F2",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("infeasible"));
}

#[test]
fn maschke_reports() {
    let ws = data("algebra.json");
    for (base, group) in [("Q3", "C2"), ("Q", "C3")] {
        let out = ringlab(&["--json", "maschke", &ws, "--base", base, "--group", group]);
        assert_eq!(code(&out), 0, "{base}[{group}]");
        let v = json(&out);
        assert_eq!(v["failed"], serde_json::json!([]));
        assert_eq!(v["semisimplicity"]["regular"]["semisimple"], true);
    }
    let out = ringlab(&["--json", "maschke", &ws, "--base", "F2", "--group", "C2"]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    let failed: Vec<&str> = v["failed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(failed.contains(&"|G|B = B"));
    assert_eq!(v["semisimplicity"]["regular"]["semisimple"], false);
}

#[test]
fn maschke_certificate_verifies_from_file() {
    let ws = data("algebra.json");
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("q3c2.json");
    let out = ringlab(&[
        "maschke",
        &ws,
        "--base",
        "Q3",
        "--group",
        "C2",
        "--certificate",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        code(&ringlab(&[
            "separability",
            "verify",
            &ws,
            p.to_str().unwrap()
        ])),
        0
    );
}

#[test]
fn field_override_changes_verdict() {
    let ws = data("algebra.json");
    assert_eq!(
        code(&ringlab(&[
            "maschke", &ws, "--base", "Q", "--group", "C2", "--field", "F2"
        ])),
        3
    );
    assert_eq!(
        code(&ringlab(&[
            "maschke", &ws, "--base", "F2", "--group", "C2", "--field", "F3"
        ])),
        0
    );
    assert_eq!(code(&ringlab(&["check", &ws, "--field", "F4"])), 4);
}

#[test]
fn radical_exit_codes() {
    let ws = data("algebra.json");
    assert_eq!(code(&ringlab(&["radical", &ws, "--ring", "Q3"])), 0);
    let out = ringlab(&["--json", "radical", &ws, "--ring", "T2"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["radical"]["dim"], 1);
}

#[test]
fn tensor_of_regular_modules() {
    let ws = data("algebra.json");
    let out = ringlab(&[
        "--json",
        "tensor",
        &ws,
        "--right",
        "QC2.right",
        "--left",
        "QC2.reg",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["dim"], 2);
    assert_eq!(
        code(&ringlab(&[
            "tensor", &ws, "--right", "QC2.reg", "--left", "QC2.reg"
        ])),
        4
    );
}

#[test]
fn category_tables_arrow() {
    let cats = data("categories.json");
    let out = ringlab(&["--json", "category", "tables", &cats, "--category", "arrow"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let m = &v["categories"][0]["objects"][0];
    assert_eq!(m["object"], "M");
    assert_eq!(m["subobjects"].as_array().unwrap().len(), 2);
    assert_eq!(m["subobject_simple"], true);
    assert_eq!(m["subobject_semisimple"], false);
    assert_eq!(v["categories"][0]["pointed"], false);
}

#[test]
fn category_search_outcomes() {
    let cats = data("categories.json");
    let out = ringlab(&["category", "search", &cats, "--functor", "id_arrow"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("R[N,M](f) = f"));
    assert_eq!(
        code(&ringlab(&[
            "category",
            "search",
            &cats,
            "--functor",
            "arrow_to_one"
        ])),
        2
    );
    assert_eq!(
        code(&ringlab(&[
            "category",
            "search",
            &cats,
            "--functor",
            "kill_e"
        ])),
        2
    );
    let out = ringlab(&[
        "category",
        "search",
        &cats,
        "--functor",
        "one_to_idempotent",
        "--budget",
        "0",
    ]);
    assert_eq!(code(&out), 5);
}

#[test]
fn category_reflect_and_compose() {
    let cats = data("categories.json");
    let out = ringlab(&[
        "--json",
        "category",
        "reflect",
        &cats,
        "--functor",
        "id_pointed",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["reports"].as_array().unwrap().len(), 14);
    let out = ringlab(&[
        "category",
        "reflect",
        &cats,
        "--functor",
        "id_arrow",
        "--property",
        "mono",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("mono: reflected"));
    let out = ringlab(&[
        "category",
        "compose",
        &cats,
        "--first",
        "id_arrow",
        "--second",
        "arrow_to_one",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn reports_are_deterministic() {
    let ws = data("algebra.json");
    let a = ringlab(&["--json", "maschke", &ws, "--base", "Q3", "--group", "S3"]);
    let b = ringlab(&["--json", "maschke", &ws, "--base", "Q3", "--group", "S3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarseprox"))
        .args(args)
        .env_remove("COARSEPROX_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("coarseprox-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn unit_interval_is_a_neighbourhood_of_nothing_but_itself() {
    let out = run(&[
        "decide",
        "prec",
        "--backend",
        "q-halfline",
        "interval(0,1,open,open)",
        "compl(nat)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], Value::Bool(true));
    assert_eq!(v["version"], "1");
    assert_eq!(v["command"], "decide prec");
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);

    for mode in ["image", "disjoint", "pairs"] {
        let out = run(&[
            "decide",
            "prec",
            "--backend",
            "q-halfline",
            "--mode",
            mode,
            "compl(nat)",
            "compl(nat)",
        ]);
        assert_eq!(
            json(&out)["result"]["verdict"],
            Value::Bool(false),
            "{mode}"
        );
    }
}

#[test]
fn evens_and_odds_are_close_at_radius_two() {
    let v = json(&run(&[
        "decide",
        "b",
        "--backend",
        "z-metric",
        "ap(0,2)",
        "ap(1,2)",
    ]));
    assert_eq!(v["result"]["verdict"], Value::Bool(true));
    assert_eq!(v["witness"]["entourage"]["r"], 2);
}

#[test]
fn lambda_and_bounded() {
    let v = json(&run(&["decide", "lambda", "union(evens, odds)", "nat"]));
    assert_eq!(v["result"]["verdict"], Value::Bool(false));
    let v = json(&run(&["decide", "lambda", "ap(0,2)", "ap(1,2)"]));
    assert_eq!(v["result"]["verdict"], Value::Bool(true));
    let v = json(&run(&[
        "decide",
        "bounded",
        "--backend",
        "q-halfline",
        "finite{1/2, 3}",
    ]));
    assert_eq!(v["result"]["verdict"], Value::Bool(true));
    let v = json(&run(&[
        "decide",
        "bounded",
        "--backend",
        "q-halfline",
        "interval(0,5,closed,closed)",
    ]));
    assert_eq!(v["result"]["verdict"], Value::Bool(false));
    let v = json(&run(&[
        "decide",
        "lambda",
        "--backend",
        "windowed",
        "squares",
        "squares",
    ]));
    assert_eq!(v["result"]["verdict"]["unknown_at_window"], 1000);
}

#[test]
fn certificates_round_trip_through_validate() {
    let out = run(&["certify", "nonnormal", "--candidate", "compl(nat)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["certificate"]["offset"], "1/2");
    assert_eq!(v["certificate"]["trace"].as_array().unwrap().len(), 50);
    let path = scratch("nonnormal.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["valid"], Value::Bool(true));

    let mut forged = v;
    forged["certificate"]["offset"] = Value::from("1/1");
    std::fs::write(&path, forged.to_string()).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["valid"], Value::Bool(false));
}

#[test]
fn integer_witnesses_validate() {
    for args in [
        ["witness", "normal", "ap(0,2)", "nat"],
        ["witness", "star", "ap(0,2)", "nat"],
        ["witness", "split", "ap(0,2)", "neg(ap(0,2))"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let path = scratch(&format!("{}.json", args[1]));
        std::fs::write(&path, &out.stdout).unwrap();
        assert_eq!(
            run(&["validate", path.to_str().unwrap()]).status.code(),
            Some(0),
            "{args:?}"
        );
    }
}

#[test]
fn refused_constructions_exit_with_one() {
    let out = run(&["witness", "normal", "nat", "ap(0,2)"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["exists"], Value::Bool(false));
    let out = run(&[
        "witness",
        "normal",
        "--backend",
        "q-halfline",
        "interval(0,1,open,open)",
        "compl(nat)",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["certify", "nonnormal", "--candidate", "nat"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["decide", "prec", "ap(0,)", "all"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 6"));
    let out = run(&["decide", "prec", "interval(0,1,open,open)", "all"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        run(&["decide", "prec", "--mode", "resemblance", "all", "all"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", "--backend", "windowed"]).status.code(),
        Some(2)
    );
}

#[test]
fn images_under_generators() {
    let v = json(&run(&["image", "--radius", "2", "finite{0}"]));
    assert_eq!(v["result"]["F"], serde_json::json!([-1, 0, 1]));
    let v = json(&run(&[
        "image",
        "--backend",
        "q-halfline",
        "--offsets",
        "1/2",
        "finite{1}",
    ]));
    assert_eq!(
        v["result"]["Q"]["extra"],
        serde_json::json!(["1/2", "1/1", "3/2"])
    );
}

#[test]
fn check_reports_are_reproducible_and_match_the_expected_pattern() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for path in [&a, &b] {
        let out = Command::new(env!("CARGO_BIN_EXE_coarseprox"))
            .args([
                "check",
                "--suite",
                "proximity",
                "--backend",
                "q-halfline",
                "--pairs",
                "80",
                "--windows",
                "100",
            ])
            .args(["--out", path.to_str().unwrap()])
            .env("COARSEPROX_SEED", "11")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["result"]["plan"]["seed"], 11);
    let failures = v["result"]["reports"][0]["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|f| f["clause"] == "proximity.strong"));
}

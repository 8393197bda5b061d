//! End-to-end tests of the plumber binary: output shapes, exit codes, JSON
//! round trips, and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn plumber(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumber"))
        .args(args)
        .env_remove("PLUMBER_GUARD_CELLS")
        .output()
        .expect("binary runs")
}

fn plumber_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_plumber"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn city_json_shape() {
    let out = plumber(&["city", "--yoshi", "2"]);
    assert_eq!(exit_code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["m"], 4);
    assert_eq!(json["tau"], "2413");
    assert_eq!(json["cells"], serde_json::json!([[1, 1], [1, 2], [2, 2]]));
    assert_eq!(json["word"], serde_json::json!([2, 1, 3]));

    // the same city from explicit paths
    let out2 = plumber(&["city", "--top", "UUDD", "--bottom", "DUDU"]);
    assert_eq!(stdout(&out), stdout(&out2));
}

#[test]
fn city_errors() {
    // equal paths leave no cells
    let out = plumber(&["city", "--top", "UD", "--bottom", "UD"]);
    assert_eq!(exit_code(&out), 2);
    let out = plumber(&["city", "--top", "UX", "--bottom", "DU"]);
    assert_eq!(exit_code(&out), 2);
    let out = plumber(&["city"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn mario_and_luigi_facets() {
    let out = plumber(&["mario", "--yoshi", "2", "--sigma", "1324"]);
    assert_eq!(exit_code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["elbows"], serde_json::json!([[1, 1], [2, 2]]));
    assert_eq!(json["checks"]["bottom_closed"], true);
    assert_eq!(json["checks"]["no_cross_after_elbow"], true);
    assert_eq!(json["checks"]["is_facet"], true);

    let out = plumber(&["mario", "--yoshi", "2", "--sigma", "2413"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["elbows"], serde_json::json!([]));

    let out = plumber(&["luigi", "--yoshi", "2", "--sigma", "2314"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["elbows"], serde_json::json!([[2, 2]]));
    assert_eq!(json["checks"]["top_closed"], true);
    assert_eq!(json["checks"]["no_cross_before_elbow"], true);
}

#[test]
fn unrealizable_sigma_exits_3() {
    let out = plumber(&["mario", "--yoshi", "2", "--sigma", "3142"]);
    assert_eq!(exit_code(&out), 3);
    let out = plumber(&["luigi", "--yoshi", "2", "--sigma", "3142"]);
    assert_eq!(exit_code(&out), 3);
    // malformed sigma is an input error instead
    let out = plumber(&["mario", "--yoshi", "2", "--sigma", "1224"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn trace_command() {
    let all_elbows = r#"{"city":{"top":"UUDD","bottom":"DUDU"},"elbows":[[1,1],[1,2],[2,2]]}"#;
    let out = plumber_stdin(&["trace"], all_elbows);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1234");

    let empty = r#"{"city":{"top":"UUDD","bottom":"DUDU"},"elbows":[]}"#;
    let out = plumber_stdin(&["trace"], empty);
    assert_eq!(stdout(&out).trim(), "2413");

    // an elbow outside the city is rejected
    let bad = r#"{"city":{"top":"UUDD","bottom":"DUDU"},"elbows":[[3,1]]}"#;
    let out = plumber_stdin(&["trace"], bad);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn check_command_reports_predicates() {
    let cfg = r#"{"city":{"top":"UUUDDD","bottom":"DUDUDU"},"elbows":[[1,2],[2,3]]}"#;
    let out = plumber_stdin(&["check"], cfg);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["bottom_closed"], false);
    assert_eq!(json["top_closed"], false);
}

#[test]
fn enumerate_counts_and_guard() {
    let out = plumber(&["enumerate", "--yoshi", "2", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "8");
    let out = plumber(&[
        "enumerate",
        "--yoshi",
        "3",
        "--filter",
        "bottom-closed",
        "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "56");
    let out = plumber(&[
        "enumerate",
        "--graph",
        "3",
        "--filter",
        "bottom-closed",
        "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "8");
    let out = plumber(&[
        "enumerate",
        "--yoshi",
        "2",
        "--filter",
        "facet:1324",
        "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "1");

    // line mode lists elbow sets
    let out = plumber(&["enumerate", "--yoshi", "1"]);
    assert_eq!(stdout(&out), "[]\n[[1,1]]\n");

    // the cell guard is env-tunable
    let out = Command::new(env!("CARGO_BIN_EXE_plumber"))
        .args(["enumerate", "--yoshi", "3", "--count-only"])
        .env("PLUMBER_GUARD_CELLS", "5")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 4);
}

#[test]
fn count_families_and_expect() {
    let out = plumber(&["count", "--family", "permutations", "--n", "2"]);
    assert_eq!(stdout(&out).trim(), "8");
    let out = plumber(&["count", "--family", "permutations", "--n", "3"]);
    assert_eq!(stdout(&out).trim(), "56");
    let out = plumber(&["count", "--family", "graphs", "--n", "3"]);
    assert_eq!(stdout(&out).trim(), "8");
    let out = plumber(&["count", "--family", "derangements", "--n", "2"]);
    assert_eq!(stdout(&out).trim(), "2");
    let out = plumber(&[
        "count",
        "--family",
        "intervals",
        "--n",
        "2",
        "--threads",
        "2",
    ]);
    assert_eq!(stdout(&out).trim(), "8");

    let out = plumber(&[
        "count",
        "--family",
        "permutations",
        "--n",
        "2",
        "--expect",
        "8",
    ]);
    assert_eq!(exit_code(&out), 0);
    let out = plumber(&[
        "count",
        "--family",
        "permutations",
        "--n",
        "2",
        "--expect",
        "9",
    ]);
    assert_eq!(exit_code(&out), 1);

    // guards exceed with code 4; unknown family with 2
    let out = plumber(&["count", "--family", "permutations", "--n", "99"]);
    assert_eq!(exit_code(&out), 4);
    let out = plumber(&["count", "--family", "widgets", "--n", "2"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_command() {
    let out = plumber(&["verify", "--yoshi", "3"]);
    assert_eq!(exit_code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["pass"], true);
    assert_eq!(json["counts"]["bottom"], 56);
    assert_eq!(json["counts"]["top"], 56);
    assert_eq!(json["counts"]["interval"], 56);
    assert_eq!(json["box"]["equal"], true);

    let out = plumber(&["verify", "--graph", "4"]);
    assert_eq!(exit_code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["counts"]["interval"], 56);

    let out = plumber(&["verify", "--random", "--m", "6", "--seed", "42"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn bruhat_command() {
    let out = plumber(&["bruhat", "145236", "351624"]);
    assert_eq!(stdout(&out).trim(), "false");
    let out = plumber(&["bruhat", "351624", "351624"]);
    assert_eq!(stdout(&out).trim(), "true");
    let out = plumber(&["bruhat", "123456", "351624"]);
    assert_eq!(stdout(&out).trim(), "true");
    let out = plumber(&["bruhat", "12", "351624"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn munu_command() {
    let out = plumber(&["munu", "--yoshi", "2"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["mu"], serde_json::json!([1, 1, 1, 3]));
    assert_eq!(json["nu"], serde_json::json!([2, 4, 4, 4]));
}

#[test]
fn render_command() {
    let out = plumber(&["render", "--yoshi", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        include_str!("../../plumbing/tests/goldens/yoshi_hill_2_city.txt")
    );

    let out = plumber(&["render", "--yoshi", "2", "--format", "svg"]);
    assert_eq!(
        stdout(&out),
        include_str!("../../plumbing/tests/goldens/yoshi_hill_2_city.svg")
    );

    let cfg = r#"{"city":{"top":"UUDD","bottom":"DUDU"},"elbows":[]}"#;
    let out = plumber_stdin(&["render", "--config", "-"], cfg);
    assert!(stdout(&out).contains("-> 3 1 4 2"));

    // unsupported format is a usage error
    let out = plumber(&["render", "--yoshi", "2", "--format", "png"]);
    assert_eq!(exit_code(&out), 2);
    let out = plumber(&["render", "--yoshi", "2", "--format", "svg", "--scale", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn json_round_trip_city_to_config() {
    // the city JSON printed by `city` feeds back as the city of a config
    let city_json = stdout(&plumber(&["city", "--yoshi", "2"]));
    let wrapped = format!(r#"{{"city":{},"elbows":[[1,1]]}}"#, city_json.trim());
    let out = plumber_stdin(&["trace"], &wrapped);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1423");
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["city", "--random", "--m", "7", "--seed", "9"],
        vec!["verify", "--yoshi", "2"],
        vec!["render", "--yoshi", "3", "--format", "svg", "--color"],
        vec!["enumerate", "--yoshi", "2", "--filter", "top-closed"],
    ] {
        let a = plumber(&args);
        let b = plumber(&args);
        assert_eq!(stdout(&a), stdout(&b), "{args:?}");
    }
}

use std::process::{Command, Output};

use serde_json::Value;

fn polya(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_polya"));
    for var in [
        "POLYA_TRUNC",
        "POLYA_GROUP_CAP",
        "POLYA_ORACLE_CAP",
        "POLYA_ENUM_BUDGET",
    ] {
        cmd.env_remove(var);
    }
    cmd.args(args)
        .envs(env.iter().copied())
        .output()
        .expect("run polya")
}

fn ok(args: &[&str]) -> Value {
    let out = polya(args, &[]);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect()
}

#[test]
fn cycle_index_examples() {
    let doc = ok(&["cycle-index", r#"{"kind":"symmetric","n":3}"#]);
    assert_eq!(doc["schema"], "polya/v1");
    assert_eq!(
        doc["output"]["cycle_index"],
        "1/6*x_1^3 + 1/2*x_1*x_2 + 1/3*x_3"
    );
    let c4 = ok(&[
        "cycle-index",
        r#"{"kind":"generators","n":4,"generators":["(1 2 3 4)"]}"#,
    ]);
    assert_eq!(
        c4["output"]["cycle_index"],
        "1/4*x_1^4 + 1/4*x_2^2 + 1/2*x_4"
    );
    assert_eq!(
        ok(&["cycle-index", r#"{"kind":"trivial","n":2}"#])["output"]["cycle_index"],
        "x_1^2"
    );
}

#[test]
fn quotient_series_examples() {
    let p1 = ok(&[
        "quotient-series",
        r#"{"family":"symmetric","data":{"betti":[1,0,1]}}"#,
        "-N",
        "3",
    ]);
    assert_eq!(
        strings(&p1["output"]["series"]),
        ["1", "u^2 + 1", "u^4 + u^2 + 1", "u^6 + u^4 + u^2 + 1"]
    );

    let genus1 = ok(&[
        "quotient-series",
        r#"{"family":"symmetric","data":{"betti":[1,2,1]},"u_one":true}"#,
        "-N",
        "2",
    ]);
    assert_eq!(strings(&genus1["output"]["series"]), ["1", "0", "0"]);

    let hodge = ok(&[
        "quotient-series",
        r#"{"family":"symmetric","data":{"hodge":[[0,0,1],[1,1,1]]}}"#,
        "-N",
        "2",
    ]);
    assert_eq!(hodge["output"]["series"][2], "x^2*y^2*u^4 + x*y*u^2 + 1");

    let alt = ok(&[
        "quotient-series",
        r#"{"family":"alternating","data":{"betti":[1,0,1]}}"#,
        "-N",
        "3",
    ]);
    assert_eq!(alt["output"]["series"][3], "u^6 + u^4 + u^2 + 1");
}

#[test]
fn explicit_map_data() {
    // φ = 2 on a one-dimensional degree-0 space: Sym^n has trace 2^n
    let doc = ok(&[
        "quotient-series",
        r#"{"family":"symmetric","data":{"map":[[["2"]]]}}"#,
        "-N",
        "4",
    ]);
    assert_eq!(
        strings(&doc["output"]["series"]),
        ["1", "2", "4", "8", "16"]
    );
}

#[test]
fn counting_examples() {
    let pc = ok(&[
        "point-count",
        r#"{"group":{"kind":"symmetric","n":3},"q":2,"counts":[2,4,8]}"#,
    ]);
    assert_eq!(pc["output"]["count"], "8");

    let frac = ok(&[
        "point-count",
        r#"{"group":{"kind":"symmetric","n":2},"q":2,"counts":[1,2]}"#,
    ]);
    assert_eq!(frac["output"]["value"], "3/2");
    assert_eq!(frac["output"]["integral"], false);

    let z = ok(&["zeta", r#"{"q":2,"counts":[3,5,9]}"#, "-N", "3"]);
    assert_eq!(strings(&z["output"]["series"]), ["1", "3", "7", "15"]);

    let p = ok(&["polya", r#"{"group":{"kind":"cyclic","n":4},"colors":2}"#]);
    assert_eq!(p["output"]["count"], "6");

    let census = ok(&["discriminant-census", r#"{"n":2,"q":5}"#]);
    assert_eq!(
        (
            census["output"]["zero"].as_u64(),
            census["output"]["qr"].as_u64()
        ),
        (Some(5), Some(10))
    );
}

#[test]
fn hodge_command_reports_numbers() {
    let doc = ok(&[
        "hodge",
        r#"{"group":{"kind":"symmetric","n":2},"hodge":[[0,0,1],[1,0,1],[0,1,1],[1,1,1]]}"#,
    ]);
    let numbers = doc["output"]["hodge_numbers"].as_array().unwrap();
    assert!(numbers.contains(&serde_json::json!([1, 1, 2])));
}

#[test]
fn oracle_check_passes() {
    let doc = ok(&["oracle-check", r#"{"seed":42}"#]);
    let summary = doc["output"]["summary"].as_str().unwrap();
    let (k, total) = summary
        .strip_prefix("PASS ")
        .unwrap()
        .split_once('/')
        .unwrap();
    assert_eq!(k, total);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], env: &[(&str, &str)]| polya(args, env).status.code();
    assert_eq!(code(&["cycle-index", "{not json"], &[]), Some(1));
    assert_eq!(
        code(
            &["cycle-index", r#"{"kind":"symmetric","n":3,"extra":1}"#],
            &[]
        ),
        Some(1)
    );
    assert_eq!(
        code(
            &[
                "cycle-index",
                r#"{"kind":"symmetric","n":8}"#,
                "--group-cap",
                "100"
            ],
            &[]
        ),
        Some(2)
    );
    assert_eq!(
        code(
            &["cycle-index", r#"{"kind":"symmetric","n":5}"#],
            &[("POLYA_GROUP_CAP", "10")]
        ),
        Some(2)
    );
    assert_eq!(
        code(
            &[
                "discriminant-census",
                r#"{"n":3,"q":7}"#,
                "--enum-budget",
                "10"
            ],
            &[]
        ),
        Some(2)
    );
    assert_eq!(
        code(&["oracle-check", "{}", "--oracle-cap", "5"], &[]),
        Some(2)
    );
    assert_eq!(
        code(&["zeta", r#"{"q":2,"counts":[3]}"#, "-N", "3"], &[]),
        Some(1)
    );
}

#[test]
fn parse_errors_show_the_line() {
    let out = polya(
        &["cycle-index", "{\"kind\": \"symmetric\",\n \"n\": }"],
        &[],
    );
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("\"n\": }"), "{err}");
}

#[test]
fn environment_sets_defaults() {
    let out = polya(
        &["zeta", r#"{"q":2,"count_poly":[1,1]}"#],
        &[("POLYA_TRUNC", "2")],
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(strings(&doc["output"]["series"]), ["1", "3", "7"]);
    assert_eq!(doc["job"]["limits"]["trunc"], 2);
}

#[test]
fn echoed_job_round_trips() {
    let first = polya(
        &[
            "point-count",
            r#"{"group":{"kind":"dihedral","n":4},"q":3,"counts":["4", 10, "28", 82]}"#,
        ],
        &[],
    );
    assert!(first.status.success());
    let doc: Value = serde_json::from_slice(&first.stdout).unwrap();
    // counts given as strings come back normalized
    assert_eq!(
        doc["job"]["params"]["counts"],
        serde_json::json!([4, 10, 28, 82])
    );
    let job = doc["job"].to_string();
    let again = polya(&["run", &job], &[]);
    assert_eq!(again.stdout, first.stdout);
}

#[test]
fn timing_is_opt_in() {
    let plain = ok(&["cycle-index", r#"{"kind":"cyclic","n":5}"#]);
    assert!(plain.get("timing_ms").is_none());
    let timed = ok(&["cycle-index", r#"{"kind":"cyclic","n":5}"#, "--timing"]);
    assert!(timed["timing_ms"].is_number());
}

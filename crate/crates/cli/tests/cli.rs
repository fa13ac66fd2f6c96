use std::process::{Command, Output};

use serde_json::Value;
use torimod::arith::json::{series_from_json, series_to_json};
use torimod::arith::CycElem;
use torimod::forms::{check_certificate, TruncationCertificate};
use torimod::generators::s_series;
use torimod::geom::examples;

fn torimod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torimod"))
        .args(args)
        .env_remove("TORIMOD_CACHE")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn projective_line_form_from_both_pipelines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p1.json");
    std::fs::write(
        &path,
        serde_json::to_string(&examples::p1().to_spec()).unwrap(),
    )
    .unwrap();
    let out = torimod(&[
        "form",
        "--fan",
        path.to_str().unwrap(),
        "--deg",
        r#"{"l":5,"values":[1,1]}"#,
        "--prec",
        "50",
        "--pipeline",
        "both",
    ]);
    let v = json(&out);
    let f = series_from_json(&v["series"]).unwrap();
    assert_eq!(f, s_series(1, 5, 1, 50).unwrap().scale_int(-2));
    assert_eq!(v["agreement"], "exact");
}

#[test]
fn generator_example() {
    let v = json(&torimod(&[
        "gen", "--type", "s", "--a", "1", "--l", "5", "--k", "1", "--prec", "10",
    ]));
    let f = series_from_json(&v["series"]).unwrap();
    let want = -(&CycElem::root_of_unity(5, 1) - &CycElem::root_of_unity(5, 4));
    assert_eq!(f.coeff(1), want);
    assert_eq!(f.prec(), 10);
}

#[test]
fn emitted_series_round_trip() {
    for args in [
        vec!["gen", "--type", "r", "--k", "4", "--prec", "12"],
        vec![
            "form",
            "--fan",
            "F1",
            "--deg",
            r#"{"l":7,"values":[1,4,2,6]}"#,
            "--prec",
            "12",
        ],
        vec!["fricke", "--a", "2", "--l", "7", "--prec", "12"],
    ] {
        let out = torimod(&args);
        let v = json(&out);
        let f = series_from_json(&v["series"]).unwrap();
        assert_eq!(series_to_json(&f), v["series"], "{args:?}");
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "--cache-dir",
        d,
        "gen",
        "--type",
        "s",
        "--a",
        "3",
        "--l",
        "7",
        "--k",
        "2",
        "--prec",
        "40",
    ];
    let cold = torimod(&args);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = torimod(&args);
    let uncached = torimod(&args[2..]);
    assert!(cold.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn cache_flag_beats_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let run = |flag: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_torimod"));
        cmd.env("TORIMOD_CACHE", env_dir.path());
        if flag {
            cmd.arg("--cache-dir").arg(flag_dir.path());
        }
        cmd.args([
            "gen", "--type", "s", "--a", "1", "--l", "5", "--k", "1", "--prec", "5",
        ]);
        assert!(cmd.output().unwrap().status.success());
    };
    run(true);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 0);
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 1);
    run(false);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 1);
}

#[test]
fn certify_emits_a_checkable_certificate() {
    let v = json(&torimod(&[
        "form",
        "--fan",
        "P2",
        "--deg",
        r#"{"l":5,"values":[1,2,3]}"#,
        "--prec",
        "20",
        "--certify",
    ]));
    let cert: TruncationCertificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    assert_eq!(cert.prec, 20);
    assert!(check_certificate(&examples::p2(), &cert).is_ok());
}

#[test]
fn hecke_reports_generator_coordinates() {
    let v = json(&torimod(&[
        "hecke",
        "--fan",
        "P1",
        "--deg",
        r#"{"l":5,"values":[2,2]}"#,
        "--p",
        "3",
        "--prec",
        "20",
    ]));
    assert_eq!(v["operator"], "T_3");
    // −2 s_{2/5} is an eigenform up to relabelling: T_3 gives −2(s_{1/5} + s_{2/5})
    let f = series_from_json(&v["series"]).unwrap();
    let want = s_series(1, 5, 1, 20)
        .unwrap()
        .add(&s_series(2, 5, 1, 20).unwrap())
        .scale_int(-2);
    assert_eq!(f, want);
    assert_eq!(v["generators"]["terms"].as_array().unwrap().len(), 2);
    let u = json(&torimod(&[
        "hecke",
        "--fan",
        "P1",
        "--deg",
        r#"{"l":5,"values":[2,2]}"#,
        "--p",
        "5",
        "--prec",
        "10",
    ]));
    assert_eq!(u["operator"], "U_5");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| torimod(args).status.code().unwrap();
    // domain errors
    assert_eq!(
        code(&[
            "form",
            "--fan",
            "cube",
            "--deg",
            r#"{"l":5,"values":[1,1,1,1,1,1,1,1]}"#,
            "--prec",
            "3",
            "--pipeline",
            "cohomology"
        ]),
        1
    );
    assert_eq!(
        code(&[
            "form",
            "--fan",
            "P1",
            "--deg",
            r#"{"l":5,"values":[5,1]}"#,
            "--prec",
            "3"
        ]),
        1
    );
    assert_eq!(
        code(&[
            "hecke",
            "--fan",
            "P1",
            "--deg",
            r#"{"l":5,"values":[1,1]}"#,
            "--p",
            "4",
            "--prec",
            "3"
        ]),
        1
    );
    // usage errors
    assert_eq!(
        code(&[
            "form",
            "--fan",
            "P1",
            "--deg",
            r#"{"l":5,"values":[1,1]}"#,
            "--prec",
            "0"
        ]),
        2
    );
    assert_eq!(
        code(&["form", "--fan", "P1", "--deg", "{not json", "--prec", "3"]),
        2
    );
    assert_eq!(
        code(&[
            "form",
            "--fan",
            "nosuchfile.json",
            "--deg",
            r#"{"l":5,"values":[1,1]}"#,
            "--prec",
            "3"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "form",
            "--fan",
            "P1",
            "--deg",
            r#"{"l":5,"values":[1,1]}"#,
            "--prec",
            "3",
            "--pipeline",
            "x"
        ]),
        2
    );
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["verify", "--suite", "99"]), 2);
}

#[test]
fn usage_errors_name_the_field() {
    let out = torimod(&[
        "form",
        "--fan",
        "P1",
        "--deg",
        r#"{"l":5,"values":[1]}"#,
        "--prec",
        "3",
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--deg"));
}

#[test]
fn verify_runs_selected_suites() {
    let out = torimod(&["--pretty", "verify", "--suite", "1,10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    assert!(text.contains("2 of 2 passed"));
}

#[test]
fn fan_info_reports_structure() {
    let v = json(&torimod(&["fan-info", "--fan", "cube", "--prec", "4"]));
    assert_eq!(v["rank"], 3);
    assert_eq!(v["simplicial"], false);
    assert_eq!(v["complete"], true);
    assert!(v["radius"].as_i64().unwrap() >= 4);
}

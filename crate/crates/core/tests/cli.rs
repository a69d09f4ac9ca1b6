use std::fs;
use std::path::Path;

use mkdv_nvbc::cli::{dispatch, manifest_path};

fn run(args: &[&str]) -> i32 {
    dispatch(std::iter::once("mkdv-nvbc").chain(args.iter().copied()))
}

fn manifest(out: &Path) -> serde_json::Value {
    let text = fs::read_to_string(manifest_path(out)).expect("manifest written");
    serde_json::from_str(&text).unwrap()
}

#[test]
fn sample_writes_figure1_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let code = run(&[
        "sample",
        "--solution",
        "breather",
        "--alpha",
        "7",
        "--beta",
        "1",
        "--b",
        "0.3",
        "--t",
        "0",
        "--smin",
        "-10",
        "--smax",
        "10",
        "--n",
        "1024",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,k"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (s, k) = l.split_once(',').unwrap();
            (s.parse().unwrap(), k.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 1024);
    assert_eq!(rows[0].0, -10.0);
    assert_eq!(rows[1023].0, 10.0);
    // Values are written at full precision.
    let p = mkdv_nvbc::spectral_params::EffectiveParams::new(7.0, 1.0, 0.3, 0.0, 0.0).unwrap();
    for &(s, k) in rows.iter().step_by(97) {
        assert_eq!(
            k,
            mkdv_nvbc::exact_solutions::breather_eval(&p, s, 0.0).unwrap()
        );
    }

    let m = manifest(&out);
    assert_eq!(m["command"], "sample");
    assert_eq!(m["parameters"]["alpha"], 7.0);
    assert_eq!(m["parameters"]["n"], 1024);
    for path in m["outputs"].as_array().unwrap() {
        assert!(Path::new(path.as_str().unwrap()).exists(), "{path}");
    }
}

#[test]
fn sample_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dp.json");
    let code = run(&[
        "sample",
        "--solution",
        "doublepole",
        "--beta",
        "1",
        "--b",
        "0.3",
        "--t",
        "2",
        "--n",
        "33",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["s"].as_array().unwrap().len(), 33);
    assert_eq!(v["k"].as_array().unwrap().len(), 33);
    assert_eq!(v["background"], 0.3);
}

#[test]
fn domain_violation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.csv");
    assert_eq!(
        run(&[
            "sample",
            "--solution",
            "breather",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--b",
            "1.6",
            "--out",
            out.to_str().unwrap()
        ]),
        2
    );
    assert!(!out.exists());
    assert_eq!(
        run(&[
            "sample",
            "--solution",
            "doublepole",
            "--beta",
            "0.2",
            "--b",
            "0.3"
        ]),
        2
    );
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["verify"]), 2);
}

#[test]
fn verify_residual_passes_for_figure1() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("residual.json");
    let code = run(&[
        "verify",
        "--suite",
        "residual",
        "--solution",
        "breather",
        "--alpha",
        "7",
        "--beta",
        "1",
        "--b",
        "0.3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"].as_array().unwrap().len(), 2);
    assert_eq!(manifest(&out)["pass"], true);
}

#[test]
fn verify_failure_exits_one() {
    // 64 points cannot resolve the Figure-1 carrier.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("coarse.json");
    let code = run(&[
        "verify",
        "--suite",
        "residual",
        "--n",
        "64",
        "--t",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(manifest(&out)["pass"], false);
}

#[test]
fn verify_other_suites() {
    let dir = tempfile::tempdir().unwrap();
    for (suite, extra) in [
        ("invariants", vec![]),
        ("oracle", vec!["--n", "300", "--seed", "4"]),
        ("limits", vec!["--alpha", "2", "--beta", "1", "--b", "0.3"]),
        ("boundary", vec!["--n", "100", "--seed", "4"]),
    ] {
        let out = dir.path().join(format!("{suite}.json"));
        let mut args = vec!["verify", "--suite", suite, "--out", out.to_str().unwrap()];
        args.extend(extra);
        assert_eq!(run(&args), 0, "{suite}");
        let m = manifest(&out);
        assert_eq!(m["pass"], true, "{suite}");
        if suite == "oracle" || suite == "boundary" {
            assert_eq!(m["seed"], 4);
        }
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        assert_eq!(
            run(&[
                "verify",
                "--suite",
                "oracle",
                "--n",
                "200",
                "--seed",
                "9",
                "--out",
                out.to_str().unwrap()
            ]),
            0
        );
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn oracle_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("oracle.csv");
    assert_eq!(
        run(&[
            "oracle",
            "--n",
            "41",
            "--t",
            "0.01",
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("s,k,k_determinant,k_oracle,k_quotient")
    );
    assert_eq!(text.lines().count(), 42);
    assert_eq!(run(&["oracle", "--solution", "doublepole"]), 2);
}

#[test]
fn evolve_writes_checkpoint_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("evolve.csv");
    let code = run(&[
        "evolve",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--b",
        "0.3",
        "--modes",
        "512",
        "--dt",
        "1e-4",
        "--tfinal",
        "0.02",
        "--dealias",
        "1",
        "--checkpoints",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,l_inf,l2");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,0,0"));
    let last: Vec<f64> = lines[3].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 0.02);
    assert!(last[1] < 1e-4, "{last:?}");
    // Steps beyond the dispersive limit are refused.
    assert_eq!(run(&["evolve", "--dt", "1"]), 2);
}

#[test]
fn asymptotics_table_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sep.csv");
    assert_eq!(
        run(&[
            "asymptotics",
            "--beta",
            "1",
            "--b",
            "0.3",
            "--times",
            "5,10,20",
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("t,separation"));
    assert_eq!(text.lines().count(), 4);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.with_extension("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["reading"], "opposite_signs");
    let outputs = manifest(&out)["outputs"].as_array().unwrap().len();
    assert_eq!(outputs, 3);
}

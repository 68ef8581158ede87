use std::process::{Command, Output};

fn platelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_platelab"))
        .args(args)
        .output()
        .unwrap()
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn roots_at_origin_and_unit_radius() {
    let out = platelab(&["roots", "--r", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let t = rows(&out);
    assert_eq!(t[0][0], "r");
    assert_eq!(&t[1][1..5], ["0.0", "0.0", "-1.0", "0.0"]);
    assert_eq!(t[2][1], "-0.25");
    assert_eq!(t[2][3], "-0.25");
    assert_eq!(t[2][6], "oscillatory");
}

#[test]
fn roots_constants() {
    let out = platelab(&["roots", "--constants"]);
    let t = rows(&out);
    assert_eq!(t[0], ["name", "value", "residual"]);
    let zeta: f64 = t[1][1].parse().unwrap();
    let delta: f64 = t[2][1].parse().unwrap();
    assert!((zeta - 0.4239).abs() < 1e-4 && (delta - 0.3206).abs() < 1e-4);
    assert!(t[1][2].parse::<f64>().unwrap() < 1e-12);
}

#[test]
fn roots_range() {
    let out = platelab(&["roots", "--range", "0:2:5"]);
    assert_eq!(rows(&out).len(), 6);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["roots"][..],
        &["roots", "--range", "1:0:3"],
        &["roots", "--r", "-1"],
        &["verify", "--l", "2"],
        &["verify", "--n", "3", "--l", "1.5"],
        &["verify", "--n", "3", "--l", "2", "--data", "bump"],
        &["verify", "--n", "3", "--l", "2", "--region", "edge"],
        &["oracle", "--lemma", "9.9"],
        &["frobnicate"],
    ] {
        assert_eq!(platelab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn oracle_sinc_sup() {
    let out = platelab(&["oracle", "--lemma", "4.6", "--t", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let t = rows(&out);
    assert_eq!(t[0], ["lemma", "parameter", "bound", "measured", "pass"]);
    let sup: f64 = t[1][3].parse().unwrap();
    assert!((sup - 5.0).abs() < 1e-3);
}

#[test]
fn oracle_sup_power() {
    let out = platelab(&["oracle", "--lemma", "4.4", "--l", "2", "--t", "10"]);
    let sup: f64 = rows(&out)[1][3].parse().unwrap();
    assert!((sup - 4.0 * (-2.0f64).exp() / 100.0).abs() < 1e-15);
}

#[test]
fn verify_heat_scenario() {
    let out = platelab(&["verify", "--n", "3", "--l", "2", "--data", "gaussian:a=1"]);
    assert_eq!(out.status.code(), Some(0));
    let t = rows(&out);
    assert_eq!(
        t[0],
        [
            "t",
            "norm",
            "region",
            "profile",
            "predicted_exponent",
            "fitted_slope"
        ]
    );
    assert!(t.iter().any(|r| r[3] == "heat" && r[4] == "-1.25"));
    assert!(t.iter().any(|r| r[3] == "none" && r[4] == "-0.75"));
}

#[test]
fn verify_reports_failed_check() {
    // n = 10 Gaussian data: the high-frequency shell still dominates on the
    // default horizon, so the two-sided solution check fails.
    let out = platelab(&["verify", "--n", "10", "--l", "7", "--data", "gaussian:a=1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("solution-slope") && err.contains("FAIL"),
        "{err}"
    );
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let cfg = dir.join("cli-scenario.toml");
    std::fs::write(
        &cfg,
        "n = 3\nl = 2.0\ndata = \"gaussian:a=1\"\nregion = \"low\"\nt-max = 200.0\n",
    )
    .unwrap();
    let csv = dir.join("cli-scenario.csv");
    let out = platelab(&[
        "report",
        "--config",
        cfg.to_str().unwrap(),
        "--t-max",
        "100",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    let last_t: f64 = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(last_t <= 100.0);
    assert!(text.lines().skip(1).all(|l| l.contains(",low,")));
}

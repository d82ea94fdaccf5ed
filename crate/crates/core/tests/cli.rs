use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subord"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_inverse_stable_grid() {
    let o = run(&[
        "eval",
        "--density",
        "inv-stable",
        "--alpha",
        "0.5",
        "--t",
        "1",
        "--x-min",
        "0.01",
        "--x-max",
        "5",
        "--points",
        "100",
        "--spacing",
        "log",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,density,abs_err_est,terms");
    assert_eq!(lines.len(), 101);
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    let want = (-1e-4f64 / 4.0).exp() / std::f64::consts::PI.sqrt();
    assert_eq!(first[0], 0.01);
    assert!(((first[1] - want) / want).abs() < 1e-12);
    let xs: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
    assert!(!text.contains('\r'));
}

#[test]
fn degenerate_grid_is_a_usage_error() {
    let o = run(&[
        "eval",
        "--density",
        "ig",
        "--delta",
        "1",
        "--gamma",
        "0",
        "--t",
        "1",
        "--x-min",
        "1",
        "--x-max",
        "1",
        "--points",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&o.stderr).trim().lines().count(), 1);
}

#[test]
fn bad_parameters_exit_two() {
    assert_eq!(
        run(&[
            "eval",
            "--density",
            "stable",
            "--t",
            "1",
            "--x-min",
            "1",
            "--x-max",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    let o = run(&[
        "eval",
        "--density",
        "stable",
        "--alpha",
        "1.5",
        "--t",
        "1",
        "--x-min",
        "1",
        "--x-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["eval", "--density", "nope"]).status.code(), Some(2));
}

#[test]
fn quotient_output_is_independent_of_t() {
    let args = |t: &'static str| {
        run(&[
            "eval",
            "--density",
            "quotient-inv",
            "--alpha1",
            "0.5",
            "--alpha2",
            "0.5",
            "--t",
            t,
            "--x-min",
            "0.1",
            "--x-max",
            "10",
            "--points",
            "20",
        ])
    };
    assert_eq!(stdout(&args("1")), stdout(&args("7.5")));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(
        &conf,
        "density = inv-stable\nalpha = 0.5\nt = 4\nx-min = 0.5\nx_max = 2\npoints = 3\n",
    )
    .unwrap();
    let conf = conf.to_str().unwrap();
    let from_file = run(&["--config", conf, "eval"]);
    assert_eq!(
        from_file.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&from_file.stderr)
    );
    let direct = run(&[
        "eval",
        "--density",
        "inv-stable",
        "--alpha",
        "0.5",
        "--t",
        "4",
        "--x-min",
        "0.5",
        "--x-max",
        "2",
        "--points",
        "3",
    ]);
    assert_eq!(stdout(&from_file), stdout(&direct));
    let overridden = run(&["eval", "--config", conf, "--t", "1"]);
    let t1 = run(&[
        "eval",
        "--density",
        "inv-stable",
        "--alpha",
        "0.5",
        "--t",
        "1",
        "--x-min",
        "0.5",
        "--x-max",
        "2",
        "--points",
        "3",
    ]);
    assert_eq!(stdout(&overridden), stdout(&t1));
}

#[test]
fn gnuplot_companion_script() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stable.csv");
    let o = run(&[
        "eval",
        "--density",
        "stable",
        "--alpha",
        "0.7",
        "--t",
        "1",
        "--x-min",
        "0.1",
        "--x-max",
        "10",
        "--points",
        "5",
        "--out",
        out.to_str().unwrap(),
        "--gnuplot",
        "--workers",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let script = std::fs::read_to_string(dir.path().join("stable.gp")).unwrap();
    assert!(script.contains("plot '") && script.contains("set logscale x"));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 6);
}

#[test]
fn compare_exit_codes() {
    let ok = run(&[
        "compare",
        "--density",
        "stable",
        "--alpha",
        "0.5",
        "--t",
        "1",
        "--oracle",
        "closed-form",
        "--tol",
        "1e-8",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let bad_pair = run(&[
        "compare",
        "--density",
        "stable",
        "--alpha",
        "0.7",
        "--t",
        "1",
        "--oracle",
        "closed-form",
    ]);
    assert_eq!(bad_pair.status.code(), Some(2));
    let no_mellin = run(&[
        "compare",
        "--density",
        "ig",
        "--delta",
        "1",
        "--gamma",
        "0",
        "--t",
        "1",
        "--oracle",
        "mellin",
    ]);
    assert_eq!(no_mellin.status.code(), Some(2));
    let too_strict = run(&[
        "compare",
        "--density",
        "stable",
        "--alpha",
        "0.6",
        "--t",
        "1",
        "--oracle",
        "laplace",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(too_strict.status.code(), Some(1));
}

#[test]
fn compare_json_lines() {
    let o = run(&[
        "compare",
        "--density",
        "product-inv",
        "--alpha1",
        "0.4",
        "--alpha2",
        "0.6",
        "--t",
        "1",
        "--oracle",
        "mellin",
        "--tol",
        "1e-5",
        "--points",
        "10",
        "--jsonl",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let objs: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(objs.len(), 10);
    assert!(objs
        .iter()
        .all(|v| v["pass"] == true && v["oracle"] == "mellin"));
}

#[test]
fn sample_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let draw = |out: &str, process: &[&str]| {
        let mut args = vec!["sample"];
        args.extend_from_slice(process);
        args.extend_from_slice(&["--t", "1", "--n", "10", "--seed", "42", "--out", out]);
        assert_eq!(run(&args).status.code(), Some(0));
        std::fs::read(out).unwrap()
    };
    let a = draw(&path("a.csv"), &["--process", "stable", "--alpha", "0.6"]);
    let b = draw(&path("b.csv"), &["--process", "stable", "--alpha", "0.6"]);
    assert_eq!(a, b);
    let text = String::from_utf8(a.clone()).unwrap();
    assert!(text.starts_with("# seed=42, workers=1\n"));
    assert_eq!(text.lines().count(), 11);
    let c = draw(
        &path("c.csv"),
        &["--process", "tempered", "--alpha", "0.6", "--lambda", "0"],
    );
    assert_eq!(a, c);
}

#[test]
fn limit_reports() {
    let o = run(&[
        "limit",
        "--density",
        "inv-stable",
        "--alpha",
        "0.5",
        "--t",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0.564189583"));
    let o = run(&[
        "limit",
        "--density",
        "quotient-inv",
        "--alpha1",
        "0.5",
        "--alpha2",
        "0.5",
        "--t",
        "1",
    ]);
    assert!(stdout(&o).contains("0.636619772"));
    let o = run(&[
        "limit",
        "--density",
        "inv-tempered",
        "--alpha",
        "0.5",
        "--lambda",
        "1",
        "--t",
        "1",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains("ratio=")).count(), 3);
}

use std::path::Path;
use std::process::{Command, Output};

const GAUSS: &str = r#"{"kind":"quadratic","d":-1}"#;

fn run(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealmoments"))
        .args(args)
        .env("IDEALMOMENTS_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn field_info() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["field", "--field", GAUSS], dir.path());
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("kind: QuadraticImaginary"));
    assert!(out.contains("disc: -4"));
    let o = run(
        &[
            "field",
            "--field",
            r#"{"kind":"cubic","poly":[-1,-3,0,1]}"#,
            "--format",
            "json",
        ],
        dir.path(),
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "CubicNormal");
    assert_eq!(v["disc"], 81);
    let o = run(&["field", "--field", r#"{"kind":"quadratic","d":4}"#], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("squarefree"));
}

#[test]
fn field_from_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let field = dir.path().join("field.json");
    std::fs::write(&field, r#"{"kind":"quadratic","d":5}"#).unwrap();
    let o = run(&["field", "--field", field.to_str().unwrap()], dir.path());
    assert!(stdout(&o).contains("disc: 5"));
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"field":"field.json","grid":"16,32,64","theta":2.5,"no_timestamp":true}"#,
    )
    .unwrap();
    let o = run(&["moment", "first", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("#schema=1\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("Q(sqrt(5))")).count(), 3);
    // Flags override the file.
    let o = run(
        &[
            "moment",
            "first",
            "--config",
            cfg.to_str().unwrap(),
            "--field",
            GAUSS,
            "--grid",
            "16",
        ],
        dir.path(),
    );
    let out = stdout(&o);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("Q(sqrt(-1)),16,1024,2.5")).count(),
        1,
        "{out}"
    );
    std::fs::write(&cfg, r#"{"feild":"x"}"#).unwrap();
    assert_eq!(code(&run(&["field", "--config", cfg.to_str().unwrap()], dir.path())), 1);
}

#[test]
fn first_moment_rows_and_trend() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "moment",
            "first",
            "--field",
            GAUSS,
            "--grid",
            "16:2.5,32:2.5,64:2.5",
            "--no-timestamp",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "#schema=1");
    assert_eq!(lines[1], "field,x,y,theta,regime,lhs,main1,main2,residual,normalized");
    assert!(lines[2].starts_with("Q(sqrt(-1)),16,1024,2.5,X2toX3,751,"));
    assert!(lines[4].starts_with("Q(sqrt(-1)),64,32768,2.5,X2toX3,25584,"));
    assert!(lines[5].starts_with("#trend points=3 residual_slope="));
}

#[test]
fn regime_violations_are_reported_per_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "moment",
            "second",
            "--field",
            GAUSS,
            "--grid",
            "16,32,64",
            "--theta",
            "0.5",
            "--no-timestamp",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let rows: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("Q("))
        .map(String::from)
        .collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.contains(",violation,")));
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&run(&["moment", "second", "--field", GAUSS, "--grid", ""], dir.path())),
        1
    );
    assert_eq!(code(&run(&["moment", "second", "--field", GAUSS], dir.path())), 1);
    assert_eq!(
        code(&run(&["moment", "first", "--field", GAUSS, "--grid", "16"], dir.path())),
        1
    );
    assert_eq!(code(&run(&["moment", "first", "--grid", "16:2"], dir.path())), 1);
    assert_eq!(code(&run(&["nonsense"], dir.path())), 1);
    assert_eq!(code(&run(&["verify", "lemma99"], dir.path())), 1);
    assert_eq!(code(&run(&["--help"], dir.path())), 0);
}

#[test]
fn resource_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "moment", "first", "--field", GAUSS, "--grid", "64:2.5", "--bound", "1000",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_suites_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["lemma21", "lemma22", "lemma23", "prufer"] {
        let o = run(
            &["verify", suite, "--field", GAUSS, "--bound", "300", "--naive-oracle"],
            dir.path(),
        );
        assert_eq!(code(&o), 0, "{suite}: {}", String::from_utf8_lossy(&o.stderr));
        for line in stdout(&o).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["passed"], true);
            assert_eq!(v["suite"], suite);
        }
    }
    let o = run(&["verify", "rational-baseline", "--bound", "60"], dir.path());
    assert_eq!(code(&o), 0);
}

#[test]
fn verification_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    // For the normal cubic field the residual at x = 500 is still larger than at x = 5.
    let cubic = r#"{"kind":"cubic","poly":[-1,-3,0,1]}"#;
    let o = run(
        &["verify", "key-estimate", "--field", cubic, "--bound", "500"],
        dir.path(),
    );
    assert_eq!(code(&o), 2, "{}", stdout(&o));
}

#[test]
fn output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path, jobs: &str| {
        vec![
            "moment".to_string(),
            "second".into(),
            "--field".into(),
            GAUSS.into(),
            "--grid".into(),
            "16:2.5,32:2.5,64:1.5".into(),
            "--jobs".into(),
            jobs.into(),
            "--no-timestamp".into(),
            "--out".into(),
            out.to_str().unwrap().into(),
        ]
    };
    let run_args = |v: Vec<String>| run(&v.iter().map(String::as_str).collect::<Vec<_>>(), dir.path());
    assert_eq!(code(&run_args(args(&a, "1"))), 0);
    assert_eq!(code(&run_args(args(&b, "4"))), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let o = run(&["moment", "first", "--field", GAUSS, "--grid", "16:2"], dir.path());
    assert!(stdout(&o).starts_with("#generated_unix="));
}

#[test]
fn json_output_and_other_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "moment",
            "gcd-identity",
            "--field",
            GAUSS,
            "--grid",
            "10,100,1000",
            "--format",
            "json",
            "--no-timestamp",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"][2]["lhs"], "260944");
    let o = run(
        &[
            "moment",
            "key-estimate",
            "--field",
            GAUSS,
            "--grid",
            "1000",
            "--z1",
            "-0.1",
            "--z2",
            "-0.15",
            "--format",
            "json",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["regime"], "out-of-domain");
    let o = run(
        &[
            "moment",
            "key-estimate",
            "--field",
            GAUSS,
            "--grid",
            "1000",
            "--z1",
            "-0.1",
            "--z2",
            "-0.1",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 1);
}

#[test]
fn build_writes_cache_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["build", "--field", GAUSS, "--bound", "2000", "--counts-only"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bound"], 2000);
    let table = v["table_cache"].as_str().unwrap();
    assert!(Path::new(table).exists());
    assert!(Path::new(v["splitting_cache"].as_str().unwrap()).exists());
    std::fs::write(table, "broken").unwrap();
    let o = run(&["moment", "first", "--field", GAUSS, "--grid", "10:3"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache rebuilt"));
    let o = run(&["build", "--field", GAUSS, "--bound", "100", "--no-cache"], dir.path());
    assert!(serde_json::from_slice::<serde_json::Value>(&o.stdout)
        .unwrap()
        .get("table_cache")
        .is_none());
}

#[test]
fn zeta_eval() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["zeta", "eval", "--s", "2"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["re"].as_f64().unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    let o = run(&["zeta", "eval", "--s", "0", "--field", GAUSS], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["re"].as_f64().unwrap() + 0.25).abs() < 1e-10);
    assert_eq!(code(&run(&["zeta", "eval", "--s", "1"], dir.path())), 1);
    assert_eq!(code(&run(&["zeta", "eval", "--s", "abc"], dir.path())), 1);
}

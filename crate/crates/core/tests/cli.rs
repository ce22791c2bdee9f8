use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn mjpl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mjpl"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn estimate(csv: &str, term: &str) -> f64 {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .find_map(|l| l.strip_prefix(&format!("{term},")))
        .unwrap_or_else(|| panic!("no {term} in {csv}"))
        .parse()
        .unwrap()
}

fn intercept_only_file(dir: &Path) -> PathBuf {
    write(dir, "three_of_ten.csv", "y\n1\n1\n1\n0\n0\n0\n0\n0\n0\n0\n")
}

#[test]
fn fit_intercept_only_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    intercept_only_file(dir.path());
    let out = mjpl(dir.path(), &["fit", "three_of_ten.csv", "--method", "mjpl", "--tol", "1e-10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!((estimate(&text, "intercept") - (3.5f64 / 7.5).ln()).abs() < 1e-6);
    assert!((estimate(&text, "intercept") + 0.76214).abs() < 1e-5);

    let out = mjpl(dir.path(), &["fit", "three_of_ten.csv", "--method", "ml", "--tol", "1e-10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!((estimate(&text, "intercept") + 0.8473).abs() < 1e-4);
}

#[test]
fn fit_writes_file_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    intercept_only_file(dir.path());
    let out = mjpl(dir.path(), &["fit", "three_of_ten.csv", "--out", "fit/coef.csv", "--b1", "-1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("fit/coef.csv")).unwrap();
    assert!(text.contains("# b0 -0.033 b1 -1.5 b2 -1.869 b3 0.817"));
    assert!(text.contains("# tol 0.001 max_iter 300"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fit/coef.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "fit");
    assert_eq!(manifest["coefficients"]["b1"], -1.5);
}

#[test]
fn ml_on_separated_data_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sep.csv", "y,x1\n0,-1\n1,1\n");
    let out = mjpl(dir.path(), &["fit", "sep.csv", "--method", "ml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("status diverging"));
    // the penalized fit stays finite on the same file
    let out = mjpl(dir.path(), &["fit", "sep.csv"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_input_exits_one_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.csv", "y,x1\n0,1\n1,oops\n");
    let out = mjpl(dir.path(), &["fit", "bad.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
    assert_eq!(mjpl(dir.path(), &["fit", "missing.csv"]).status.code(), Some(1));
    assert_eq!(mjpl(dir.path(), &["no-such-command"]).status.code(), Some(1));
    assert_eq!(mjpl(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn phase_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = mjpl(dir.path(), &["phase", "--kappa", "0.6", "--beta0", "0", "--gamma0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("verdict not exists"), "{text}");
    let out = mjpl(dir.path(), &["phase", "--kappa", "0.1", "--gamma", "1", "--rho2", "0.5"]);
    assert!(String::from_utf8(out.stdout).unwrap().trim_end().ends_with("verdict exists"));
}

#[test]
fn separation_prints_certificate() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "split.csv", "y,x1\n0,1\n0,2\n1,3\n");
    let out = mjpl(dir.path(), &["separation", "split.csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("separated\ncertificate intercept="));
    write(dir.path(), "mixed.csv", "y,x1\n0,1\n1,2\n0,3\n");
    let out = mjpl(dir.path(), &["separation", "mixed.csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "not separated\n");
}

#[test]
fn rescale_identity_when_mle_exists() {
    let dir = tempfile::tempdir().unwrap();
    let input = "term,estimate\nintercept,0.3\nx1,-1.25\nx2,2.5\n";
    write(dir.path(), "coef.csv", input);
    let out = mjpl(dir.path(), &["rescale", "coef.csv", "--kappa", "0.3", "--gamma", "5", "--exists", "true"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(body, input);

    // beyond the boundary the slopes are divided by q, the intercept is kept
    let out = mjpl(dir.path(), &["rescale", "coef.csv", "--kappa", "0.3", "--gamma", "5", "--exists", "false"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let q = 0.3f64.powf(-1.172) * 5f64.powf(-1.869) * 5f64.powf(0.817);
    assert_eq!(estimate(&text, "intercept"), 0.3);
    assert!((estimate(&text, "x1") + 1.25 / q).abs() < 1e-12);
}

#[test]
fn spec_errors_are_enumerated() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.json", r#"{"n": 1, "reps": 0, "psi": 3, "design": {"count": 0}}"#);
    let out = mjpl(dir.path(), &["train", "--spec", "bad.json", "--out", "o"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.matches("\n  - ").count(), 4, "{err}");

    write(dir.path(), "typo.json", r#"{"n": 10, "kapa": 0.1, "gamma": 1}"#);
    let out = mjpl(dir.path(), &["simulate", "--spec", "typo.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("kapa"));
}

#[test]
fn simulate_then_fit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sim.json", r#"{"n": 300, "kappa": 0.05, "gamma": 1, "beta_star": "s1"}"#);
    let out = mjpl(dir.path(), &["simulate", "--spec", "sim.json", "--seed", "8", "--out", "d.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("d.csv")).unwrap();
    assert!(text.contains("# seed 8"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 301);
    let out = mjpl(dir.path(), &["fit", "d.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let coef = String::from_utf8(out.stdout).unwrap();
    assert!(coef.contains("\nx15,"));
}

#[test]
fn test_rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "test.json",
        r#"{"grid": {"ns": [200], "psis": [0], "rho2s": [0], "configs": ["s1"], "points": [[0.2, 8]]}, "seed": 17}"#,
    );
    let a = mjpl(dir.path(), &["test", "--spec", "test.json", "--out", "a"]);
    let b = mjpl(dir.path(), &["test", "--spec", "test.json", "--out", "b", "--workers", "1"]);
    assert_eq!((a.status.code(), b.status.code()), (Some(0), Some(0)));
    for f in ["records.csv", "r2.csv", "manifest.json"] {
        let x = std::fs::read(dir.path().join("a").join(f)).unwrap();
        let y = std::fs::read(dir.path().join("b").join(f)).unwrap();
        assert_eq!(x, y, "{f} differs");
    }
    let records = std::fs::read_to_string(dir.path().join("a/records.csv")).unwrap();
    assert!(records.lines().last().unwrap().ends_with(",NA"), "timing is NA unless asked for");
}

#[test]
fn train_then_fit_b() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "train.json", r#"{"n": 200, "reps": 2, "design": {"count": 6}}"#);
    let out = mjpl(dir.path(), &["train", "--spec", "train.json", "--seed", "3", "--out", "tr"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = mjpl(dir.path(), &["fit-b", "tr/summary.csv", "--resamples", "999", "--out", "fb"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("fb/power_law.csv")).unwrap();
    assert!(text.contains("term,estimate,lower,upper,level,log_linear\nb0,"));
    for line in text.lines().filter(|l| l.starts_with('b')) {
        let v: Vec<f64> = line.split(',').skip(1).take(3).map(|s| s.parse().unwrap()).collect();
        assert!(v[1] <= v[0] && v[0] <= v[2], "{line}");
    }
}

#[test]
fn amse_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "amse.json", r#"{"kappas": [0.1], "gammas": [1, 3], "n": 100, "reps": 2}"#);
    let out = mjpl(dir.path(), &["amse", "--spec", "amse.json", "--out", "am"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("am/amse.csv")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "kappa,gamma,p,exists,q,mean_amse,se_amse,mean_bias,replicates");
    assert_eq!(rows.len(), 3);
}

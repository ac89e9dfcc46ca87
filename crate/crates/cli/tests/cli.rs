use std::path::PathBuf;
use std::process::{Command, Output};

use hsf::fncore::BooleanFunction;
use hsf::noise::ns_exact;

fn hsf() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hsf"));
    cmd.env_remove("HSF_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    hsf().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ltf_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hsf-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn analyze_single_weight() {
    let path = ltf_file("single.toml", "weights = [1.0]\ntheta = 0.0\n");
    let o = run(&["analyze", "--ltf", path.to_str().unwrap(), "--taus", "0.25,0.5,0.999,1"]);
    assert!(o.status.success());
    let report: toml::Value = toml::from_str(&stdout(&o)).unwrap();
    let rows = report["critical_index"].as_array().unwrap();
    let ells: Vec<String> = rows.iter().map(|r| r["ell"].to_string()).collect();
    assert_eq!(ells, ["\"inf\"", "\"inf\"", "\"inf\"", "1"]);
    assert_eq!(report["tau_star"].as_float(), Some(1.0));
}

#[test]
fn analyze_majority_matches_library() {
    let path = ltf_file("maj5.toml", "weights = [1, 1, 1, 1, 1]\ntheta = 0\n");
    let o = run(&["analyze", "--ltf", path.to_str().unwrap(), "--head-tau", "0.5"]);
    assert!(o.status.success());
    let report: toml::Value = toml::from_str(&stdout(&o)).unwrap();
    let spectrum = BooleanFunction::majority(5).unwrap().wht();
    for row in report["noise_sensitivity"].as_array().unwrap() {
        let eps = row["epsilon"].as_float().unwrap();
        let ns = row["ns"].as_float().unwrap();
        assert_eq!(ns, ns_exact(&spectrum, eps).unwrap());
    }
    let bias = &report["bias_profile"];
    assert_eq!(bias["head"].as_array().unwrap().len(), 1);
}

#[test]
fn malformed_file_names_the_field() {
    let path = ltf_file("bad.toml", "weights = [1.0]\nthreshold = 0.0\n");
    let o = run(&["analyze", "--ltf", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("threshold"), "{err}");

    let path = ltf_file("zero.toml", "weights = [0.0, 0.0]\ntheta = 0.0\n");
    let o = run(&["junta", "--ltf", path.to_str().unwrap(), "--epsilon", "0.1", "--delta", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["sweep", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--families", "cauchy"]).status.code(), Some(2));
    let path = ltf_file("ok.toml", "weights = [1.0]\ntheta = 0.0\n");
    let o = run(&["junta", "--ltf", path.to_str().unwrap(), "--epsilon", "0.7", "--delta", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn junta_on_dictator() {
    // the constant shortcut would answer with distance 1/2 and an unmet premise
    let path = ltf_file("dict.toml", "weights = [10, 1, 1, 1, 1]\ntheta = 0\n");
    let o = run(&[
        "--quiet", "junta", "--ltf", path.to_str().unwrap(), "--epsilon", "0.1", "--delta", "0.1",
        "--no-small-delta-shortcut",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("case,junta_size,L,ell,"));
    let fields: Vec<_> = lines[1].split(',').collect();
    assert_eq!(fields[7].parse::<f64>().unwrap(), 0.0);
    assert!(lines[2].starts_with("# seed=0 version="));
}

#[test]
fn junta_report_and_csv_file() {
    let path = ltf_file("dict2.toml", "weights = [10, 1, 1, 1, 1]\ntheta = 0\n");
    let out = ltf_file("junta.csv", "");
    let o = run(&[
        "junta", "--ltf", path.to_str().unwrap(), "--epsilon", "0.25", "--delta", "0.25",
        "--no-small-delta-shortcut", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let report: toml::Value = toml::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["distance"].as_float(), Some(0.0));
    let csv = std::fs::read_to_string(out).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn empty_sweep_is_header_only() {
    let o = run(&["sweep", "--count", "0", "--quiet"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("instance,family,instance_seed"));
    assert_eq!(lines[1], format!("# seed=0 version={}", env!("CARGO_PKG_VERSION")));
}

#[test]
fn sweep_is_reproducible_across_thread_counts() {
    let args = ["--seed", "11", "--quiet", "sweep", "--n", "10", "--count", "30"];
    let a = hsf().args(args).env("RAYON_NUM_THREADS", "1").output().unwrap();
    let b = hsf().args(args).env("RAYON_NUM_THREADS", "3").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 30 * 9 + 2);
}

#[test]
fn seed_falls_back_to_environment() {
    let o = hsf()
        .args(["sweep", "--count", "0", "--quiet"])
        .env("HSF_SEED", "77")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("# seed=77 "));
    let o = hsf()
        .args(["--seed", "5", "sweep", "--count", "0", "--quiet"])
        .env("HSF_SEED", "77")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("# seed=5 "));
}

#[test]
fn gaussian_default_grid() {
    let o = run(&["gaussian", "--samples", "200000"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<_> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert_eq!(text.lines().next(), Some("theta,rho,bound,mc_value,mc_radius,holds"));
}

#[test]
fn gaussian_few_samples_widen_radius() {
    let o = run(&["gaussian", "--samples", "100", "--theta", "1", "--epsilon", "0.25"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<_> = text.lines().nth(1).unwrap().split(',').collect();
    let radius: f64 = row[4].parse().unwrap();
    assert!(radius > 0.25, "{radius}");
}

#[test]
fn checks_pass_across_seeds() {
    for seed in 0..10 {
        let o = run(&[
            "--seed", &seed.to_string(), "--quiet", "checks", "--instances", "12", "--samples",
            "20000", "--function-n", "7",
        ]);
        assert_eq!(o.status.code(), Some(0), "seed {seed}");
        let text = stdout(&o);
        assert!(text.starts_with("check,instance_seed,lhs,rhs,gap,holds\n"));
        assert!(text.lines().filter(|l| !l.starts_with('#')).skip(1).all(|l| l.ends_with(",true")));
    }
}

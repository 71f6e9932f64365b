use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fpvac(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpvac"))
        .args(args)
        .env("FPVAC_OUT_DIR", out)
        .current_dir(workspace_root())
        .output()
        .unwrap()
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value_after(text: &str, prefix: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(prefix)).unwrap();
    line[prefix.len()..].trim().parse().unwrap()
}

#[test]
fn vacuum_prints_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let o = fpvac(&["vacuum", "--omega", "1", "--a", "6.2831853"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let q = value_after(&text, "q = ");
    let n = value_after(&text, "n̄ = ");
    let s = value_after(&text, "S = ");
    let q_exact = (-0.5f64).exp();
    assert!((q - q_exact).abs() < 1e-9);
    let n_exact = q_exact * q_exact / (1.0 - q_exact * q_exact);
    assert!((n - n_exact).abs() < 1e-8);
    let s_exact = (1.0 + n_exact) * (1.0 + n_exact).ln() - n_exact * n_exact.ln();
    assert!((s - s_exact).abs() < 1e-8);
    assert!(dir.path().join("vacuum.json").exists());
    assert!(dir.path().join("vacuum.csv").exists());
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["vacuum", "--omega"][..],
        &["vacuum", "--bogus", "1"],
        &[],
        &["quadrant", "--t", "1"],
        &["vacuum", "--a", "0"],
        &["detector", "--window_start", "2", "--window_end", "1"],
        &["vacuum", "--config", "does/not/exist.toml"],
        &["feasibility", "--scenario", "does/not/exist.toml"],
    ] {
        let o = fpvac(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn numerical_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.toml");
    std::fs::write(
        &cfg,
        "[bogoliubov]\nomega_over_a = [1.0]\nk = [1.0]\n[bogoliubov.quad]\nabs_tol = 1e-14\nrel_tol = 1e-11\nmax_panels = 4\n",
    )
    .unwrap();
    let o = fpvac(&["bogoliubov", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn flags_override_file_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[vacuum]\nomega = 2.0\na = 1.0\nn_trunc = 5\n").unwrap();
    let o = fpvac(&["vacuum", "--config", cfg.to_str().unwrap(), "--omega", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("vacuum.json")).unwrap()).unwrap();
    assert_eq!(json["config"]["omega"], 1.0);
    assert_eq!(json["config"]["n_trunc"], 5);
    assert_eq!(json["result"]["n_trunc"], 5);
}

#[test]
fn out_dir_flag_beats_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = fpvac(&["vacuum", "--out_dir", flag_dir.path().to_str().unwrap()], env_dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(flag_dir.path().join("vacuum.json").exists());
    assert!(!env_dir.path().join("vacuum.json").exists());
}

#[test]
fn outputs_are_independent_of_thread_count() {
    let one = tempfile::tempdir().unwrap();
    let four = tempfile::tempdir().unwrap();
    for (dir, threads) in [(&one, "1"), (&four, "4")] {
        let o = fpvac(&["bogoliubov", "--threads", threads, "--k", "0.5,2", "--omega_over_a", "1"], dir.path());
        assert_eq!(o.status.code(), Some(0));
        let o = fpvac(&["detector", "--threads", threads, "--identity_samples", "50"], dir.path());
        assert_eq!(o.status.code(), Some(0));
    }
    for name in ["bogoliubov.csv", "bogoliubov.json", "detector_rates.csv", "detector_windowed.csv", "detector.json"] {
        let a = std::fs::read(one.path().join(name)).unwrap();
        let b = std::fs::read(four.path().join(name)).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn coefficient_table_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let o = fpvac(&["bogoliubov", "--k", "1", "--omega_over_a", "1", "--delta_levels", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("bogoliubov.csv")).unwrap();
    assert!(text.starts_with("# resolved configuration\n"));
    assert!(text.contains("\nquadrant,omega,k,delta,re_alpha,im_alpha,re_beta,im_beta,err\n"));
    let rows = fpvac::export::read_coefficients(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 4 * 5);
    assert_eq!(rows.iter().filter(|r| r.delta == 0.0).count(), 4);
}

#[test]
fn example_configs_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for name in ["quadrant", "modes", "bogoliubov", "vacuum", "detector", "feasibility"] {
        let path = format!("configs/{name}.toml");
        let text = std::fs::read_to_string(workspace_root().join(&path)).unwrap();
        fpvac::config::RunConfig::parse(&text).unwrap();
        let o = fpvac(&[name, "--config", &path, "--out_dir", out], dir.path());
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
    for file in ["quadrant.csv", "modes.csv", "modes_positivity.csv", "bogoliubov.json", "detector.json", "feasibility.json"] {
        assert!(dir.path().join(file).exists(), "{file}");
    }
}

#[test]
fn help_documents_columns() {
    let dir = tempfile::tempdir().unwrap();
    let o = fpvac(&["bogoliubov", "--help"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("re_alpha, im_alpha"));
    let o = fpvac(&["detector", "--help"], dir.path());
    assert!(stdout(&o).contains("relative_deviation"));
}

#[test]
fn verify_passes_on_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let o = fpvac(&["verify"], dir.path());
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 8, "{text}");
}

//! End-to-end tests of the `spindex` binary: argument handling, exit codes,
//! golden outputs, and determinism across `--parallel` settings.

use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_spindex")
}

struct TempConfig {
    path: std::path::PathBuf,
}

impl TempConfig {
    fn new(name: &str, text: &str) -> Self {
        let path = std::env::temp_dir().join(format!(
            "spindex-cli-{}-{name}.ini",
            std::process::id()
        ));
        std::fs::write(&path, text).unwrap();
        TempConfig { path }
    }

    fn path(&self) -> &str {
        self.path.to_str().unwrap()
    }
}

impl Drop for TempConfig {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}

const DIRAC_F: &str = "\
[algebra]
type = A1

[module]
kind = cuspidal_sl2
mu0 = 1/2
mu1 = 1/2

[window]
base = [1]
radius = 10

[command]
name = dirac
";

#[test]
fn dirac_run_jsonl() {
    let cfg = TempConfig::new("dirac", DIRAC_F);
    let out = Command::new(bin())
        .args(["dirac", "--config", cfg.path(), "--format", "jsonl"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 21);
    assert!(stdout
        .lines()
        .all(|l| l.ends_with("\"dim_plus\":0,\"dim_minus\":0}")));
}

#[test]
fn csv_format_and_out_file() {
    let cfg = TempConfig::new("csv", DIRAC_F);
    let out_path = std::env::temp_dir().join(format!("spindex-cli-{}-out.csv", std::process::id()));
    let out = Command::new(bin())
        .args([
            "dirac",
            "--config",
            cfg.path(),
            "--format",
            "csv",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.starts_with("w1,dim_plus,dim_minus\n"));
    std::fs::remove_file(out_path).unwrap();
}

#[test]
fn exit_code_config_error() {
    let cfg = TempConfig::new("bad", &DIRAC_F.replace("radius = 10", "radius = 0"));
    let out = Command::new(bin()).args(["dirac", "--config", cfg.path()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // command mismatch between CLI and config is a config error too
    let cfg = TempConfig::new("mismatch", DIRAC_F);
    let out = Command::new(bin()).args(["index", "--config", cfg.path()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_code_math_precondition() {
    // integral cuspidal parameter is accepted by the parser and rejected at
    // execution with exit code 2
    let cfg = TempConfig::new("integral", &DIRAC_F.replace("mu0 = 1/2", "mu0 = 2"));
    let out = Command::new(bin()).args(["dirac", "--config", cfg.path()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("non-integral"), "{stderr}");
}

const VERIFY_OK: &str = "\
[algebra]
type = A1

[module]
kind = verma
lambda = [0]

[module2]
kind = simple_hw
lambda = [0]

[window]
base = [0]
radius = 8

[command]
name = verify
";

#[test]
fn verify_success_record() {
    let cfg = TempConfig::new("verify", VERIFY_OK);
    let out = Command::new(bin()).args(["verify", "--config", cfg.path()]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"ep\":1,\"index_pair\":1,\"equal\":true"), "{stdout}");
}

#[test]
fn parallel_outputs_byte_identical() {
    let cfg = TempConfig::new("par", DIRAC_F);
    let run = |parallel: &str| -> Vec<u8> {
        let out = Command::new(bin())
            .args(["dirac", "--config", cfg.path(), "--parallel", parallel, "--format", "csv"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let a = run("1");
    let b = run("8");
    let c = run("1");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn usage_on_missing_args() {
    let out = Command::new(bin()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin()).args(["dirac"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn golden_outputs() {
    // committed golden files pin the exact output bytes of the sample jobs
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let cases = [
        ("index", "index_simple_a1.ini", "jsonl", "index_simple_a1.jsonl"),
        ("index", "index_simple_a1.ini", "csv", "index_simple_a1.csv"),
        ("verify", "verify_verma_simple_a1.ini", "jsonl", "verify_verma_simple_a1.jsonl"),
        ("dirac", "dirac_cuspidal_a1.ini", "csv", "dirac_cuspidal_a1.csv"),
        ("dirac", "dirac_induced_a2.ini", "csv", "dirac_induced_a2.csv"),
        ("cohomology", "cohomology_verma_a2.ini", "jsonl", "cohomology_verma_a2.jsonl"),
    ];
    for (cmd, job, fmt, golden) in cases {
        let config = root.join("jobs").join(job);
        let out = Command::new(bin())
            .args([cmd, "--config", config.to_str().unwrap(), "--format", fmt, "--parallel", "3"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{job}: {}", String::from_utf8_lossy(&out.stderr));
        let expected =
            std::fs::read(std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(golden))
                .unwrap();
        assert_eq!(out.stdout, expected, "{job} ({fmt}) drifted from the golden file");
    }
}

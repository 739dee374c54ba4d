use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cantor() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cantor"));
    c.env_remove("CANTOR_BUDGET");
    c
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// The report up to its `timing` section, which is serialized last.
fn without_timing(path: &Path) -> String {
    let text = std::fs::read_to_string(path).unwrap();
    let cut = text
        .find("\"timing\"")
        .expect("report has a timing section");
    text[..cut].to_string()
}

const Z4: &str = r#"
kind = "sadic-embedding"
[system]
group = "cyclic 4"
[horizons]
max_len = 8
depth = 6
recurrence = 16
"#;

#[test]
fn run_writes_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "z4.toml", Z4);
    let out = dir.path().join("r.json");
    let o = cantor()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"schema\": \"cantor-report/1\""));
    assert!(text.contains("\"status\": \"pass\""));
    assert!(String::from_utf8_lossy(&o.stdout).contains("overall: Pass"));
}

#[test]
fn reports_are_byte_identical_up_to_timing() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = cantor()
            .args(["run", "--config"])
            .arg(configs().join("s3_product_sampled.toml"))
            .arg("--out")
            .arg(out)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    assert_eq!(without_timing(&a), without_timing(&b));
}

#[test]
fn missing_seed_with_sampling_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = "kind = \"product-normalizer\"\n[system]\ngroup = \"symmetric 3\"\n[product]\nmodulus = 3\nsamples = 10\n";
    let cfg = write(dir.path(), "p.toml", text);
    let out = dir.path().join("r.json");
    let o = cantor()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("`seed`"), "{}", stderr(&o));
    let o = cantor()
        .args(["run", "--seed", "9", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn schema_error_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad.toml",
        &Z4.replace("depth = 6", "depth = -1"),
    );
    let o = cantor()
        .args(["run", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("horizons.depth"), "{}", stderr(&o));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "id.toml",
        &Z4.replace(
            "group = \"cyclic 4\"",
            "group = \"cyclic 4\"\nschedule = [[0]]",
        ),
    );
    let out = dir.path().join("r.json");
    let o = cantor()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL         primitivity"));
}

#[test]
fn budget_overrun_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "z4.toml", Z4);
    let out = dir.path().join("r.json");
    let o = cantor()
        .env("CANTOR_BUDGET", "50")
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .contains("budget is 50"));
}

#[test]
fn report_goes_to_stdout_without_a_path() {
    let o = cantor()
        .args(["run", "--config"])
        .arg(configs().join("odometer_profinite.toml"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with('{'));
    assert!(stderr(&o).contains("overall: Pass"));
}

#[test]
fn oracle_compare_with_inline_group() {
    let o = cantor()
        .args([
            "oracle-compare",
            "--group",
            "cyclic 8",
            "--max-len",
            "12",
            "--depth",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"oracle-agreement\""));
}

#[test]
fn dump_language_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lang.txt");
    let o = cantor()
        .args([
            "dump-language",
            "--group",
            "cyclic 4",
            "--max-len",
            "2",
            "--depth",
            "0",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    // τ(0) = 0 1 3
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "len=1 count=3\n0\n1\n3\nlen=2 count=2\n0 1\n1 3\n"
    );
}

#[test]
fn dump_hierarchy_from_config() {
    let o = cantor()
        .args(["dump-hierarchy", "--config"])
        .arg(configs().join("z4_hierarchy.toml"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(
        text.contains("n=2 ln=10 kn=4 |Bn|=384"),
        "{}",
        &text[..200.min(text.len())]
    );
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(code(&cantor().arg("frobnicate").output().unwrap()), 3);
    assert_eq!(
        code(
            &cantor()
                .args(["dump-language", "--max-len", "2"])
                .output()
                .unwrap()
        ),
        3
    );
    assert_eq!(
        code(
            &cantor()
                .args(["run", "--config", "/nonexistent.toml"])
                .output()
                .unwrap()
        ),
        3
    );
    assert_eq!(code(&cantor().arg("--help").output().unwrap()), 0);
}

#[test]
fn shipped_configs_validate() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let text = std::fs::read_to_string(&path).unwrap();
            assert!(
                cantor_core::scenario::ScenarioConfig::from_toml(&text).is_ok(),
                "{}",
                path.display()
            );
        }
    }
}

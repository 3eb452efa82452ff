use std::path::PathBuf;
use std::process::{Command, Output};

fn awcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_awcalc")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("awcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_prints_text_then_json() {
    let out = awcalc(&["gen", "P", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let (first, rest) = text.split_once('\n').unwrap();
    assert_eq!(first, "1");
    let json: serde_json::Value = serde_json::from_str(rest).unwrap();
    assert_eq!(json["polynomial"]["terms"][0]["coeff"], "1");
}

#[test]
fn passing_suite_exits_zero_and_writes_report() {
    let path = scratch("limits.json");
    let out = awcalc(&["verify", "limits", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("PASS limits"));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["pass"], true);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let cfg = scratch("run.cfg");
    std::fs::write(&cfg, "# exact run\nseed = 1\nrelation_degree = 2\nfamily_degree = 2\nsamples = 1\n").unwrap();
    let out = awcalc(&["verify", "daha", "--config", cfg.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["config"]["seed"], 5);
    assert_eq!(json["config"]["relation_degree"], 2);
}

#[test]
fn configuration_errors_exit_two() {
    let cfg = scratch("bad.cfg");
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    for args in [
        vec!["verify", "daha", "--config", cfg.to_str().unwrap()],
        vec!["--mode", "symbolic", "verify", "adjoints"],
        vec!["--mode", "symbolic", "norms"],
        vec!["--precision", "4", "norms"],
        vec!["verify", "nothing"],
        vec!["apply", "Q", "E1"],
    ] {
        let out = awcalc(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn degenerate_parameters_exit_nonzero() {
    let out = awcalc(&["--config", "/nonexistent/awcalc.cfg", "gen", "E", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let cfg = scratch("degenerate.cfg");
    // t0 = t1 = s = 1 gives abcd = 1, so the E_1 denominator 1 - abcd vanishes.
    std::fs::write(&cfg, "params = 1, 2, 1, 3, 1\n").unwrap();
    let out = awcalc(&["--config", cfg.to_str().unwrap(), "gen", "E", "1"]);
    assert_ne!(out.status.code(), Some(0));
}

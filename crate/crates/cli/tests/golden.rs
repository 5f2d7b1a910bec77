//! Golden-output tests: fixed expected records, byte-identical reruns, and
//! the exit code contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .env_remove("RINGLAB_DMAX")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn hilbert_exterior_golden() {
    let out = run(&["hilbert", "--ring", "exterior", "--dmax", "6"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"tool\":\"ringlab\",\"version\":\"0.1.0\",\"ring\":\"exterior\",\"dmax\":6,\"dims\":[1,1,1,1,1,1,1]}\n"
    );
}

#[test]
fn ordinal_delta_golden() {
    let out = run(&["ordinal", "delta", "w^2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"tool\":\"ringlab\",\"version\":\"0.1.0\",\"op\":\"delta\",\"input\":\"w^2\",\"value\":\"6\"}\n"
    );
}

#[test]
fn classify_pair_rado_golden() {
    let out = run(&[
        "classify-pair",
        "--ring",
        "rado",
        "--u",
        "x{0},x{2}",
        "--v",
        "0@1,x{2}",
        "--d",
        "0",
        "--dmax",
        "20",
    ]);
    // a bad pair is a successful computation with a flagged verdict
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("\"verdict\":\"bad-up-to-20\""), "{text}");
}

#[test]
fn jring_product_golden() {
    let out = run(&[
        "jring", "mul", "alpha:1:1", "alpha:-1:1", "--prime", "3", "--trunc", "6",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"product\":\"zeta^-1(1/3^1)\""), "{text}");
}

#[test]
fn byte_identical_reruns() {
    for args in [
        vec!["hilbert", "--ring", "cube", "--dmax", "12"],
        vec!["basis", "--ring", "epsilon", "--degree", "6", "--dmax", "8"],
        vec!["socle", "--ring", "cube-bar(0,2)", "--dmax", "8"],
        vec![
            "dann", "--ring", "exterior", "--gens", "x{0,1}", "--dmax", "20",
        ],
        vec!["root", "invert", "1 + x^(1/2)"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(stdout(&a), stdout(&b), "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn exit_codes() {
    // usage error
    let out = run(&["hilbert", "--ring", "no-such-ring", "--dmax", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // bound exceeded
    let out = run(&[
        "mul", "--ring", "exterior", "--a", "x{3}", "--b", "x{4}", "--dmax", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // check failed: the epsilon counterexample ideal
    let out = run(&[
        "dann",
        "--ring",
        "epsilon",
        "--gens",
        "x[w^2]+x[w+1]",
        "--dmax",
        "16",
        "--compare",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("\"degree\":6"), "{text}");
}

#[test]
fn config_file_and_env_supply_dmax() {
    let dir = std::env::temp_dir().join(format!("ringlab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("config.toml");
    std::fs::write(&cfg, "[defaults]\ndmax = 5\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["hilbert", "--ring", "exterior"])
        .arg("--config")
        .arg(&cfg)
        .env_remove("RINGLAB_DMAX")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("\"dmax\":5"), "{}", stdout(&out));

    let out = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["hilbert", "--ring", "exterior"])
        .env("RINGLAB_DMAX", "4")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("\"dmax\":4"), "{}", stdout(&out));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn adjust_stage_record() {
    let out = run(&[
        "adjust",
        "--gens",
        "x:1,y:1",
        "--relators",
        "x*y",
        "--steps",
        "1",
        "--m",
        "2",
        "--start-weight",
        "6",
        "--slack",
        "2",
        "--dmax",
        "12",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"agreement_below\":8"), "{text}");
    assert!(text.contains("\"pairs_adjoined\""), "{text}");
}

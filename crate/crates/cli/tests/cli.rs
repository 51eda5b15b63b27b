use std::process::{Command, Output};

fn baire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baire"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn chi_of_empty_language() {
    let o = baire(&["chi", "--language", "empty", "--bits", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "00000000\n");
}

#[test]
fn chi_of_parity() {
    let o = baire(&["chi", "--language", "parity", "--bits", "7"]);
    assert!(o.status.success());
    // λ,0,1,00,01,10,11: odd number of ones
    assert_eq!(stdout(&o), "0010110\n");
}

#[test]
fn check_meets_full() {
    let o = baire(&[
        "check",
        "--strategy",
        "sparse",
        "--language",
        "full",
        "--horizon",
        "8",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Met{"), "{}", stdout(&o));
}

#[test]
fn check_avoids_mode() {
    let o = baire(&[
        "check",
        "--strategy",
        "ones",
        "--index",
        "1",
        "--language",
        "empty",
        "--horizon",
        "8",
        "--mode",
        "avoids",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "AvoidsUpTo{8}\n");
}

#[test]
fn verify_halving() {
    let o = baire(&["verify", "--suite", "halving", "--n", "2", "--size", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn unknown_strategy_is_a_config_error() {
    let o = baire(&["strategy", "--strategy", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nosuch"), "{}", stderr(&o));
}

#[test]
fn scale_guard_reported() {
    let o = baire(&["circuit-diag", "--n", "10", "--size", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("scale guard"), "{}", stderr(&o));
}

#[test]
fn validate_lists_every_problem() {
    let o = baire(&[
        "validate",
        "--for",
        "check",
        "--strategy",
        "nosuch",
        "--n",
        "9",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("nosuch"));
    assert!(out.contains("language: missing"));
    assert!(out.contains("horizon: missing"));
    assert!(out.contains("scale guard"));
    let ok = baire(&[
        "validate",
        "--for",
        "chi",
        "--language",
        "full",
        "--bits",
        "3",
    ]);
    assert!(ok.status.success());
    assert_eq!(stdout(&ok), "ok\n");
}

#[test]
fn deterministic_across_runs_and_threads() {
    let args = [
        "game",
        "--strategy",
        "sparse",
        "--player-one",
        "random",
        "--seed",
        "7",
        "--horizon",
        "200",
    ];
    let a = baire(&args);
    let b = baire(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    let one = baire(&[
        "verify",
        "--suite",
        "halving",
        "--n",
        "2",
        "--size",
        "3",
        "--threads",
        "1",
    ]);
    let four = baire(&[
        "verify",
        "--suite",
        "halving",
        "--n",
        "2",
        "--size",
        "3",
        "--threads",
        "4",
    ]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn game_transcript_is_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.jsonl");
    let res = dir.path().join("r.txt");
    let o = baire(&[
        "game",
        "--strategy",
        "sparse",
        "--horizon",
        "64",
        "--output",
        out.to_str().unwrap(),
        "--result-out",
        res.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut state = 0;
    for (n, line) in text.lines().enumerate() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 4);
        assert_eq!(v["move_index"], n as u64);
        assert_eq!(v["player"], if n % 2 == 0 { "I" } else { "II" });
        assert_eq!(
            v["state_length"],
            state + v["extension_length"].as_u64().unwrap()
        );
        state = v["state_length"].as_u64().unwrap();
    }
    let prefix = std::fs::read_to_string(&res).unwrap();
    assert_eq!(prefix.trim().len() as u64, state);
}

#[test]
fn martingale_csv_rows() {
    let o = baire(&["martingale", "--language", "empty", "--horizon", "20"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("position,string,bit,num,den"));
    assert_eq!(lines.count(), 21);
}

#[test]
fn circuit_diag_csv() {
    let o = baire(&["circuit-diag", "--n", "2", "--size", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.last().unwrap().ends_with(",0"));
}

#[test]
fn diag_commands_pass() {
    for args in [
        &["diag", "--strategy", "sparse", "--blocks", "5"][..],
        &[
            "diag",
            "--strategy",
            "echo",
            "--mode",
            "local",
            "--blocks",
            "3",
        ][..],
    ] {
        let o = baire(args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.toml");
    std::fs::write(&path, "command = \"chi\"\nlanguage = \"full\"\nbits = 4\n").unwrap();
    let p = path.to_str().unwrap();
    let o = baire(&["--config", p]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1111\n");
    let o = baire(&["--config", p, "chi", "--bits", "6"]);
    assert_eq!(stdout(&o), "111111\n");
    std::fs::write(&path, "command = \"chi\"\nlanguage = \"full\"\nbitz = 4\n").unwrap();
    let o = baire(&["--config", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bitz"), "{}", stderr(&o));
}

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baumsweet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn gen_prefixes() {
    assert_eq!(
        stdout(&["gen", "baum_sweet", "-n", "20"]),
        "1 1 0 1 1 0 0 1 0 1 0 0 1 0 0 1 1 0 0 1\n"
    );
    assert_eq!(
        stdout(&["gen", "u_seq", "-n", "8"]),
        "1 2 5 6 17 18 21 22\n"
    );
    assert_eq!(stdout(&["gen", "thue_morse"]).split(' ').count(), 32);
    assert_eq!(
        stdout(&["gen", "q_seq_r:3", "-n", "3", "--csv"]),
        "n,value\n0,0\n1,1\n2,1\n"
    );
}

#[test]
fn invert_series() {
    assert_eq!(
        stdout(&["invert", "--series", "D", "-n", "8"]),
        "0 1 1 0 0 1 1 0\n"
    );
    assert_eq!(stdout(&["invert", "--series", "C", "-n", "4"]), "0 1 0 1\n");
    let tm = stdout(&["invert", "--series", "thue_morse", "-n", "8"]);
    assert_eq!(tm, "0 1 1 0 0 0 0 1\n");
    assert!(run(&["invert", "--series", "D_r:3", "-n", "8"])
        .status
        .success());
}

#[test]
fn automaton_outputs() {
    let dot = stdout(&["automaton", "fig1"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot, stdout(&["automaton", "fig1", "--dot"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["automaton", "fig2", "--rebase", "2", "--json"])).unwrap();
    assert_eq!(json["base"], 4);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig3.dot");
    stdout(&["automaton", "fig3", "--out", path.to_str().unwrap()]);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        stdout(&["automaton", "fig3"])
    );
    assert!(run(&["automaton", "fig4:3"]).status.success());
}

#[test]
fn kernel_and_linrep() {
    assert!(stdout(&["kernel", "fig1"]).starts_with("fig1: 3 kernel elements"));
    assert!(stdout(&["kernel", "q_seq"]).starts_with("q_seq: 5 classes"));
    let rep: serde_json::Value =
        serde_json::from_str(&stdout(&["linrep", "moser_de_bruijn", "--max-dim", "4"])).unwrap();
    assert!(rep["dim"].as_u64().unwrap() <= 2);
    assert!(stdout(&["linrep", "l_seq"]).contains("rank profile"));
}

#[test]
fn words_subcommand() {
    assert!(stdout(&["words", "fib_word"]).starts_with("fib_word: holds"));
    let f = stdout(&["words", "freq", "l", "-n", "1000"]);
    assert!(f.starts_with("l n=1000: "), "{f}");
    assert_eq!(run(&["words", "freq", "zeta"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        run(&["verify", "--check", "eq.b_eq"]).status.code(),
        Some(0)
    );
    let flagged = run(&["verify", "--check", "typo.unr_recur.printed_form"]);
    assert_eq!(flagged.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&flagged.stdout).contains("flagged"));
    // too few terms for the printed form to be contradicted: it passes and so is unmet
    let unmet = run(&[
        "verify",
        "--check",
        "typo.q_recur_r.printed_form",
        "--set",
        "n=2",
    ]);
    assert_eq!(unmet.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unmet.stdout).contains("[UNMET]"));
    assert_eq!(run(&["verify", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--set", "zzz=3", "--check", "eq.b_eq"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--profile", "slow"]).status.code(), Some(2));
}

#[test]
fn verify_json_and_stability() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "verify",
        "--check",
        "seq.b_prefix20",
        "--check",
        "dual.q",
        "--jobs",
        "2",
        "--json",
        path.to_str().unwrap(),
    ];
    let a = stdout(&args);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["total"], 2);
    assert_eq!(v["checks"][0]["id"], "seq.b_prefix20");
    assert_eq!(a, stdout(&args));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["gen", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen", "baum_sweet", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["invert", "--series", "E", "-n", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["automaton", "fig7"]).status.code(), Some(2));
}

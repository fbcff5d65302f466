use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const COMMANDS: &[&str] = &[
    "check-linked",
    "check-eht",
    "check-refined",
    "check-simple",
    "check-constrained",
    "check-adaptable",
    "kernel-table",
    "eht-to-linked",
    "linked-to-eht",
    "chain-bases",
    "grassmannian-check",
    "tangent-dim",
    "vanishing-locus",
    "family-locus",
];

fn lls(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lls"))
        .args(args)
        .env_remove("LLS_FIXTURE_DIR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn fixture(name: &str) -> Vec<u8> {
    let out = lls(&["fixtures", "--name", name], b"");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn names() -> Vec<String> {
    serde_json::from_slice(&lls(&["fixtures"], b"").stdout).unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn grassmannian_example() {
    let out = lls(&["grassmannian-check"], &fixture("example-A6"));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdicts"]["linked"], Value::Bool(true));
    assert_eq!(r["verdicts"]["simple"], Value::from("false"));
    assert!(r["inputDigest"].as_str().unwrap().starts_with("sha256:"));
    assert!(r.get("timing").is_none());
}

#[test]
fn kernel_table_example() {
    let out = lls(&["kernel-table"], &fixture("example-bad-compare"));
    assert_eq!(out.status.code(), Some(0));
    let table = &report(&out)["witnesses"]["table"];
    assert_eq!(table["1,1,0"], Value::from(2));
    assert_eq!(table["1,0,1"], Value::from(3));
}

#[test]
fn rho_formula() {
    let out = lls(&["rho", "--g", "0", "--r", "1", "--d", "2", "--k", "2"], b"");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdicts"]["rho"], Value::from(2));
}

#[test]
fn exit_codes() {
    let out = lls(&["check-constrained"], &fixture("chain-single-swap"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["verdicts"]["constrained"], Value::from("false"));
    let out = lls(&["check-linked"], b"{\n  \"graph\": [\n");
    assert_eq!(out.status.code(), Some(2));
    let err = report(&out);
    assert_eq!(err["error"]["kind"], Value::from("schema"));
    assert!(err["error"]["message"].as_str().unwrap().contains("line"));
    let out = lls(&["check-linked"], &fixture("diagonal-t"));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(lls(&["fixtures", "--name", "nope"], b"").status.code(), Some(2));
}

#[test]
fn files_and_fixture_directory() {
    let dir = std::env::temp_dir().join(format!("lls-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, fixture("diagonal-t")).unwrap();
    let out = lls(&["vanishing-locus", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()], b"");
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(r["verdicts"]["divisibilityChain"], Value::Bool(true));

    std::fs::write(dir.join("example-A6.json"), fixture("diagonal-t")).unwrap();
    let over = Command::new(env!("CARGO_BIN_EXE_lls"))
        .args(["fixtures", "--name", "example-A6"])
        .env("LLS_FIXTURE_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(over.stdout, fixture("diagonal-t"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_byte_identical() {
    for name in names() {
        let doc = fixture(&name);
        assert_eq!(doc, fixture(&name));
        for cmd in COMMANDS {
            let a = lls(&[cmd, "--seed", "11"], &doc);
            let b = lls(&[cmd, "--seed", "11"], &doc);
            assert_eq!(a.stdout, b.stdout, "{cmd} on {name}");
            assert_eq!(a.status.code(), b.status.code());
            assert!(matches!(a.status.code(), Some(0..=2)));
        }
    }
}

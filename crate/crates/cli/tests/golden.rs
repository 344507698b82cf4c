//! Byte-exact CLI outputs.
//!
//! `tests/golden/cases.golden` holds one block per invocation: the command
//! line after `$ `, then stdout lines, stderr lines prefixed `! `, and the
//! exit code in brackets. Run with `SPECTRA_BLESS=1` to rewrite the file
//! from the current binary.

use std::fs;
use std::path::PathBuf;

use serde_json::Value;
use spectra::run;

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/cases.golden")
}

fn argv(line: &str) -> Vec<String> {
    let mut v = vec!["spectra".to_string()];
    v.extend(shlex::split(line).unwrap_or_else(|| panic!("bad quoting: {line}")));
    v
}

fn render(line: &str) -> String {
    let out = run(argv(line));
    let mut block = format!("$ {line}\n{}", out.stdout);
    for l in out.stderr.lines() {
        block.push_str(&format!("! {l}\n"));
    }
    block.push_str(&format!("[exit {}]\n", out.code));
    block
}

fn commands(text: &str) -> Vec<&str> {
    text.lines().filter_map(|l| l.strip_prefix("$ ")).collect()
}

#[test]
fn golden_cases_are_byte_exact() {
    let expected = fs::read_to_string(golden_path()).unwrap();
    let actual: String = commands(&expected)
        .iter()
        .map(|line| render(line))
        .collect::<Vec<_>>()
        .join("\n");
    if std::env::var_os("SPECTRA_BLESS").is_some() {
        fs::write(golden_path(), &actual).unwrap();
        return;
    }
    if actual != expected {
        let first = expected
            .split("\n\n")
            .zip(actual.split("\n\n"))
            .find(|(e, a)| e != a)
            .map(|(e, a)| format!("expected:\n{e}\nactual:\n{a}"))
            .unwrap_or_else(|| "block count differs".into());
        panic!("golden mismatch\n{first}");
    }
}

#[test]
fn json_and_text_agree() {
    let text = fs::read_to_string(golden_path()).unwrap();
    for line in commands(&text) {
        if line.starts_with("--json") {
            continue;
        }
        let plain = run(argv(line));
        let json = run(argv(&format!("--json {line}")));
        assert_eq!(plain.code, json.code, "{line}");
        if plain.code == 2 {
            continue;
        }
        let value: Value = serde_json::from_str(&json.stdout).unwrap_or_else(|e| panic!("{line}: {e}"));
        let shown = plain.stdout.trim_end();
        match &value["result"] {
            Value::Bool(b) => assert_eq!(shown, b.to_string(), "{line}"),
            Value::String(s) => assert_eq!(shown, s, "{line}"),
            Value::Null if value.get("result").is_some() => assert_eq!(shown, "none", "{line}"),
            _ => {
                if let Some(passed) = value.get("passed") {
                    assert_eq!(passed.as_bool(), Some(plain.code == 0), "{line}");
                } else if let Some(kind) = value.get("kind") {
                    assert_eq!(shown, format!("{} {}", kind.as_str().unwrap(), value["set"].as_str().unwrap()));
                } else {
                    assert_eq!(value.to_string(), shown, "{line}");
                }
            }
        }
    }
}

#[test]
fn exit_code_protocol() {
    let code = |line: &str| run(argv(line)).code;
    assert_eq!(code("set member 'S(3/2, P^1)' '(1/2)*P^1'"), 0);
    assert_eq!(code("set member 'S+(3/2, P^1)' '(3/2)*P^1'"), 1);
    assert_eq!(code("set member 'S(3/2, P^1' P^1"), 2);
    assert_eq!(code("bogus"), 2);
    assert_eq!(code("--help"), 0);
}

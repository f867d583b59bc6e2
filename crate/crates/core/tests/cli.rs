//! Replays every `console` block in the README, in process and through the
//! built binary, and checks stdout and the exit code exactly.

use std::process::Command;

use qpartition::cli::run;

const README: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md"));

struct Example {
    args: Vec<String>,
    stdout: String,
    code: i32,
}

fn examples() -> Vec<Example> {
    let mut out: Vec<Example> = Vec::new();
    let mut in_block = false;
    for line in README.lines() {
        if line.starts_with("```") {
            in_block = line == "```console";
            continue;
        }
        if !in_block {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ qpartition ") {
            out.push(Example { args: cmd.split_whitespace().map(String::from).collect(), stdout: String::new(), code: 0 });
        } else if let Some(code) = line.strip_prefix("[exit ").and_then(|r| r.strip_suffix(']')) {
            out.last_mut().expect("exit line follows a command").code = code.parse().unwrap();
        } else {
            let ex = out.last_mut().expect("output follows a command");
            ex.stdout.push_str(line);
            ex.stdout.push('\n');
        }
    }
    out
}

fn in_process(args: &[String]) -> (i32, String) {
    let argv = std::iter::once("qpartition".to_string()).chain(args.iter().cloned());
    let o = run(argv);
    (o.code, o.stdout)
}

#[test]
fn readme_has_examples() {
    assert!(examples().len() >= 10);
}

#[test]
fn readme_examples_in_process() {
    for ex in examples() {
        let (code, stdout) = in_process(&ex.args);
        assert_eq!(code, ex.code, "exit code of {:?}", ex.args);
        assert_eq!(stdout, ex.stdout, "stdout of {:?}", ex.args);
        assert_eq!(in_process(&ex.args), (code, stdout), "{:?} is not deterministic", ex.args);
    }
}

#[test]
fn readme_examples_through_binary() {
    for ex in examples() {
        let o = Command::new(env!("CARGO_BIN_EXE_qpartition"))
            .args(&ex.args)
            .env("QPARTITION_THREADS", "2")
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(ex.code), "exit code of {:?}", ex.args);
        assert_eq!(String::from_utf8(o.stdout).unwrap(), ex.stdout, "stdout of {:?}", ex.args);
    }
}

#[test]
fn invalid_input_exits_with_two() {
    let cases: &[&[&str]] = &[
        &["kr", "--variant", "9"],
        &["frobnicate"],
        &["ppoly", "--m1", "1", "--m2", "1", "--m3", "0", "--s", "3", "--parity", "2"],
        &["decompose", "--partition", "3,1,x"],
        &["compose", "--base", "1,2", "--mu", "4", "--theta", "0"],
        &["seed-expand", "--partition", "1+1+1", "--variant", "1"],
        &[],
    ];
    for args in cases {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let (code, _) = in_process(&args);
        assert_eq!(code, 2, "{args:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, stdout) = in_process(&["--help".to_string()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("ppoly"));
}

#[test]
fn trace_lists_every_state() {
    let args: Vec<String> =
        ["decompose", "--partition", "1,4,4,5,6,6,9,10,11,12,12,14", "--trace"].iter().map(|s| s.to_string()).collect();
    let (code, stdout) = in_process(&args);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["trace"].as_array().map(|t| t.len()), Some(qpartition::worked::DECOMPOSE_STATES.len()));
}

use std::path::PathBuf;
use std::process::Command;

fn testdata() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/testdata")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_sptorsion"))
        .current_dir(testdata())
        .args(args)
        .output()
        .expect("failed to spawn binary");
    (
        output.status.code().expect("exited normally"),
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
    )
}

/// Runs a command and compares stdout with `testdata/stdout/<golden>.txt`.
fn assert_golden(golden: &str, args: &[&str]) {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}");
    let path = testdata().join("stdout").join(format!("{golden}.txt"));
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("failed to read golden file {}", path.display()));
    assert_eq!(
        stdout, expected,
        "stdout for {args:?} did not match {golden}.txt"
    );
}

#[test]
fn orders() {
    assert_golden("orders_g1", &["orders", "--genus", "1"]);
    assert_golden("orders_g2", &["orders", "--genus", "2"]);
    assert_golden("orders_g3", &["orders", "--genus", "3"]);
    assert_golden("orders_g2_json", &["orders", "--genus", "2", "--json"]);
}

#[test]
fn check_order() {
    assert_golden(
        "check_order_g2_m10",
        &["check-order", "--genus", "2", "--m", "10"],
    );
    assert_golden(
        "check_order_g2_m9",
        &["check-order", "--genus", "2", "--m", "9"],
    );
    assert_golden(
        "check_order_g2_m1",
        &["check-order", "--genus", "2", "--m", "1"],
    );
    assert_golden(
        "check_order_g2_m10_json",
        &["check-order", "--genus", "2", "--m", "10", "--json"],
    );
}

#[test]
fn solvable() {
    assert_golden(
        "solvable_g2_m35",
        &["solvable", "--genus", "2", "--m", "35"],
    );
    assert_golden("solvable_g1_m7", &["solvable", "--genus", "1", "--m", "7"]);
}

#[test]
fn bound_and_max_order() {
    assert_golden("bound_g1", &["bound", "--genus", "1"]);
    assert_golden("bound_g2", &["bound", "--genus", "2"]);
    assert_golden("bound_g3", &["bound", "--genus", "3"]);
    assert_golden("bound_g2_json", &["bound", "--genus", "2", "--json"]);
    assert_golden("max_order_g5", &["max-order", "--genus", "5"]);
}

#[test]
fn presentation_and_words() {
    assert_golden("verify_presentation", &["verify-presentation"]);
    assert_golden(
        "verify_presentation_json",
        &["verify-presentation", "--json"],
    );
    assert_golden("word_order_k5_squared", &["word-order", "--word", "(K5)^2"]);
    assert_golden("word_order_9h", &["word-order", "--word", "9H"]);
}

#[test]
fn matrix_order() {
    assert_golden(
        "matrix_order_k5",
        &["matrix-order", "--file", "matrices/k5.txt"],
    );
    assert_golden(
        "matrix_order_unipotent",
        &["matrix-order", "--file", "matrices/unipotent.txt"],
    );
    assert_golden(
        "matrix_order_rotation",
        &["matrix-order", "--file", "matrices/rotation_g1.txt"],
    );
    assert_golden(
        "matrix_order_unipotent_json",
        &["matrix-order", "--file", "matrices/unipotent.txt", "--json"],
    );
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["orders", "--genus", "0"], 2),
        (&["orders"], 2),
        (&["orders", "--genus", "two"], 2),
        (&["check-order", "--genus", "2", "--m", "0"], 2),
        (&["solvable", "--genus", "2", "--m", "1"], 2),
        (&["word-order", "--word", "K?"], 2),
        (&["word-order", "--word", "w_gamma"], 2),
        (
            &["matrix-order", "--file", "matrices/not_symplectic.txt"],
            1,
        ),
        (&["matrix-order", "--file", "matrices/odd.txt"], 2),
        (&["matrix-order", "--file", "matrices/malformed.txt"], 2),
        (&["matrix-order", "--file", "matrices/missing.txt"], 2),
        (&["frobnicate"], 2),
        (&["bound", "--genus", "4"], 0),
    ];
    for (args, expected) in cases {
        let (code, stdout, stderr) = run(args);
        assert_eq!(code, *expected, "{args:?}: stderr = {stderr}");
        if code != 0 {
            assert!(stdout.is_empty(), "{args:?} printed to stdout on failure");
            assert!(!stderr.is_empty(), "{args:?} gave no diagnostic");
        }
    }
}

fn numbers_in(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c.is_ascii_digit() || (c == '.' && !cur.is_empty()) {
            cur.push(c);
        } else if !cur.is_empty() {
            out.push(cur.trim_end_matches('.').to_string());
            cur.clear();
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn json_numbers(v: &serde_json::Value, out: &mut Vec<String>) {
    match v {
        serde_json::Value::Number(n) => out.push(n.to_string()),
        serde_json::Value::String(s) => out.extend(numbers_in(s)),
        serde_json::Value::Array(a) => a.iter().for_each(|x| json_numbers(x, out)),
        serde_json::Value::Object(o) => o.values().for_each(|x| json_numbers(x, out)),
        _ => {}
    }
}

#[test]
fn text_and_json_payloads_agree() {
    let corpus: &[&[&str]] = &[
        &["orders", "--genus", "3"],
        &["check-order", "--genus", "3", "--m", "30"],
        &["check-order", "--genus", "2", "--m", "7"],
        &["solvable", "--genus", "2", "--m", "35"],
        &["bound", "--genus", "2"],
        &["bound", "--genus", "5"],
        &["max-order", "--genus", "4"],
        &["word-order", "--word", "K5"],
        &["matrix-order", "--file", "matrices/k5.txt"],
    ];
    for args in corpus {
        let (_, text, _) = run(args);
        let mut json_args = args.to_vec();
        json_args.push("--json");
        let (code, json_text, _) = run(&json_args);
        assert_eq!(code, 0);
        let value: serde_json::Value =
            serde_json::from_str(&json_text).expect("single JSON object");
        assert!(value.is_object());
        assert_eq!(value["command"], args[0]);
        let mut in_json = Vec::new();
        json_numbers(&value["result"], &mut in_json);
        for n in numbers_in(&text) {
            // skip the prose constants 2, 3, 30 and 2g-style exponents in labels
            if ["0", "1", "2", "3", "4", "30"].contains(&n.as_str()) {
                continue;
            }
            let matches = in_json.iter().any(|j| {
                j == &n
                    || j.parse::<f64>()
                        .ok()
                        .zip(n.parse::<f64>().ok())
                        .is_some_and(|(a, b)| {
                            (a - b).abs() <= 1e-9 * b.abs().max(1.0) || crate_sig12(a) == n
                        })
            });
            assert!(
                matches,
                "{args:?}: text value {n} missing from JSON {in_json:?}"
            );
        }
    }
}

fn crate_sig12(x: f64) -> String {
    sptorsion::criterion::format_significant(x, 12)
}

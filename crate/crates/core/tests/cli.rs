use std::path::PathBuf;
use std::process::Command;

use eaqecc::cli::parse_code_file;
use eaqecc::{FieldSpec, LinearCode};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn eaqecc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eaqecc"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("failed to spawn binary");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden").join(name)).unwrap()
}

fn assert_golden(args: &[&str], name: &str) {
    let (code, stdout, stderr) = eaqecc(args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}");
    assert_eq!(stdout, golden(name), "{args:?} differs from {name}");
}

fn listed_code(n: usize, rows: &[&str]) -> LinearCode {
    let rows: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| {
            r.chars()
                .filter(|c| *c != '|')
                .map(|c| c.to_digit(10).unwrap())
                .collect()
        })
        .collect();
    LinearCode::from_rows(FieldSpec::prime(2), n, &rows).unwrap()
}

#[test]
fn params_golden() {
    assert_golden(&["params", "examples/code_A.txt"], "params_A.txt");
    assert!(golden("params_A.txt").starts_with("[[5,1,3;0]]_2\n"));
}

#[test]
fn dual_golden_matches_listed_basis() {
    assert_golden(&["dual", "examples/code_A.txt"], "dual_A.txt");
    let dual = parse_code_file(&golden("dual_A.txt")).unwrap();
    let listed = listed_code(
        5,
        &[
            "10010|01100",
            "01001|00110",
            "10100|00011",
            "01010|10001",
            "00001|10010",
            "00000|11111",
        ],
    );
    assert_eq!(dual, listed);
}

#[test]
fn construct_golden() {
    assert_golden(
        &["construct", "examples/code_A.txt", "--positions", "3"],
        "construct_A_3.txt",
    );
    let text = golden("construct_A_3.txt");
    assert!(text.contains("[[4,1,3;1]]_2"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 6);
}

#[test]
fn puncture_and_shorten_reproduce_listed_bases() {
    let (code, out, _) = eaqecc(&["puncture", "examples/code_A.txt", "--positions", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        parse_code_file(&out).unwrap(),
        listed_code(4, &["1010|0100", "0101|0010", "1000|0011", "0110|1001"])
    );

    let (_, dual, _) = eaqecc(&["dual", "examples/code_A.txt"]);
    let dir = tempdir();
    let dual_path = dir.join("dual_A.txt");
    std::fs::write(&dual_path, dual).unwrap();
    let (code, out, _) = eaqecc(&["shorten", dual_path.to_str().unwrap(), "--positions", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        parse_code_file(&out).unwrap(),
        listed_code(4, &["1010|1011", "0101|1101", "0110|1001", "0001|1010"])
    );
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eaqecc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn search_and_compare_golden() {
    assert_golden(
        &["search", "examples/code_A.txt", "--l", "1"],
        "search_A_1.txt",
    );
    assert_golden(&["compare-remark", "examples/code_A.txt"], "compare_A.txt");
}

#[test]
fn precondition_violation_exits_2() {
    let (code, stdout, stderr) =
        eaqecc(&["construct", "examples/code_A.txt", "--positions", "1,2,3"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("l must satisfy 1 <= l <= d-1"), "{stderr}");
}

#[test]
fn cap_exhaustion_exits_3() {
    let (code, _, stderr) = eaqecc(&["params", "examples/code_A.txt", "--cap", "10"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("cap"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(eaqecc(&["frobnicate"]).0, 2);
    assert_eq!(eaqecc(&["params", "does/not/exist.txt"]).0, 2);
    let dir = tempdir();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "q 2\nn 5\n1 0 0 1 | 0 1 1 0 0\n").unwrap();
    let (code, _, stderr) = eaqecc(&["params", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 3"), "{stderr}");
}

#[test]
fn weight_one_code_reports_vacuous_lemmas() {
    let dir = tempdir();
    let f = dir.join("weight1.txt");
    std::fs::write(&f, "q 2\nn 3\n1 0 0 | 0 0 0\n").unwrap();
    let (code, stdout, _) = eaqecc(&["verify-lemmas", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("VACUOUS"));
}

#[test]
fn json_output_is_a_single_object() {
    for args in [
        vec!["params", "examples/code_A.txt", "--format", "json"],
        vec![
            "construct",
            "examples/code_A.txt",
            "--positions",
            "2",
            "--format",
            "json",
        ],
        vec!["verify-lemmas", "examples/code_A.txt", "--format", "json"],
        vec![
            "search",
            "examples/code_A.txt",
            "--l",
            "2",
            "--format",
            "json",
        ],
        vec!["compare-remark", "examples/code_A.txt", "--format", "json"],
    ] {
        let (code, stdout, _) = eaqecc(&args);
        assert_eq!(code, 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert!(v.is_object(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["search", "examples/code_A.txt", "--l", "2"],
        vec![
            "construct",
            "examples/code_A.txt",
            "--positions",
            "1,4",
            "--format",
            "json",
        ],
        vec![
            "random", "--q", "5", "--n", "4", "--dim", "3", "--seed", "11",
        ],
    ] {
        assert_eq!(eaqecc(&args).1, eaqecc(&args).1, "{args:?}");
    }
}

#[test]
fn random_codes_are_self_orthogonal_and_parse_back() {
    let (code, stdout, _) = eaqecc(&[
        "random", "--q", "9", "--n", "4", "--dim", "3", "--seed", "5",
    ]);
    assert_eq!(code, 0);
    let c = parse_code_file(&stdout).unwrap();
    assert_eq!(c.dim(), 3);
    assert!(c.is_self_orthogonal());
}

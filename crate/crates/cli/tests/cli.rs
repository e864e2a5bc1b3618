use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

const THREE_CYCLE: &str = "3\n1 1 1\n-10\n0-1\n10-\n";

fn tfvs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfvs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

fn paley7(dir: &TempDir) -> String {
    let path = dir.path().join("p7.txt");
    let out = tfvs(&["generate", "--n", "7", "--model", "paley", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_three_cycle_every_algorithm() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c3.txt", THREE_CYCLE);
    for algorithm in ["seven-thirds", "three-approx", "exact", "layers-only", "cdz"] {
        let out = tfvs(&["solve", &input, "--algorithm", algorithm]);
        assert_eq!(out.status.code(), Some(0), "{algorithm}");
        let text = stdout(&out);
        assert_eq!(field(&text, "algorithm"), algorithm);
        assert_eq!(field(&text, "weight"), "1", "{algorithm}");
    }
}

#[test]
fn solve_transitive_is_empty() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "tt.txt", "4\n1 2 3 4\n-111\n0-11\n00-1\n000-\n");
    let out = tfvs(&["solve", &input]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "fvs"), "{}");
    assert_eq!(field(&text, "weight"), "0");
}

#[test]
fn exact_on_paley_seven() {
    let dir = TempDir::new().unwrap();
    let p7 = paley7(&dir);
    let out = tfvs(&["solve", &p7, "--algorithm", "exact"]);
    assert!(out.status.success());
    // No 4 vertices of Paley-7 are transitive, so 4 must be removed.
    assert_eq!(field(&stdout(&out), "weight"), "4");
}

#[test]
fn json_result_verifies() {
    let dir = TempDir::new().unwrap();
    let p7 = paley7(&dir);
    let result = dir.path().join("r.json");
    let out = tfvs(&["solve", &p7, "--format", "json", "--output", result.to_str().unwrap()]);
    assert!(out.status.success());
    let out = tfvs(&["verify", &p7, "--result", result.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("valid: "));

    let doc = fs::read_to_string(&result).unwrap();
    let tampered = doc.replacen("\"weight\": \"", "\"weight\": \"1", 1);
    let bad = write(&dir, "bad.json", &tampered);
    assert_eq!(tfvs(&["verify", &p7, "--result", &bad]).status.code(), Some(1));
}

#[test]
fn verify_rejects_non_fvs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c3.txt", THREE_CYCLE);
    assert_eq!(tfvs(&["verify", &input, "--fvs", "2"]).status.code(), Some(0));
    let out = tfvs(&["verify", &input, "--fvs", ""]);
    assert_ne!(out.status.code(), Some(0));
    assert_eq!(tfvs(&["verify", &input, "--fvs", "7"]).status.code(), Some(1));
}

#[test]
fn cdz_requires_t5_free_input() {
    let dir = TempDir::new().unwrap();
    let p7 = paley7(&dir);
    let out = tfvs(&["solve", &p7, "--algorithm", "cdz"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not T5-free"));
    assert_eq!(tfvs(&["solve", &p7, "--algorithm", "cdz", "--check-skip"]).status.code(), Some(1));
    assert_eq!(tfvs(&["solve", &p7, "--algorithm", "layers-only"]).status.code(), Some(1));
}

#[test]
fn parse_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3\n1 1 1\n-11\n0-1\n10-\n");
    let out = tfvs(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5, column 1"));
    assert_eq!(tfvs(&["solve", "--algorithm", "nope", &bad]).status.code(), Some(1));
    assert_eq!(tfvs(&["solve", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(tfvs(&["--help"]).status.code(), Some(0));
}

#[test]
fn generate_is_deterministic() {
    let a = tfvs(&["generate", "--n", "9", "--seed", "5", "--max-weight", "10"]);
    let b = tfvs(&["generate", "--n", "9", "--seed", "5", "--max-weight", "10"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 11);
    let json = tfvs(&["generate", "--n", "9", "--seed", "5", "--format", "json"]);
    assert!(stdout(&json).trim_start().starts_with('{'));
    assert_eq!(tfvs(&["generate", "--n", "9", "--model", "paley"]).status.code(), Some(1));
}

#[test]
fn enumerate_counts_and_emits() {
    let out = tfvs(&["enumerate", "--order", "6", "--forbidden", "4"]);
    assert!(stdout(&out).contains(": 1 classes"));
    let dir = TempDir::new().unwrap();
    let emit = dir.path().join("t5");
    let out = tfvs(&["enumerate", "--order", "5", "--forbidden", "4", "--emit", emit.to_str().unwrap()]);
    assert!(stdout(&out).contains(": 3 classes"));
    let files: Vec<_> = fs::read_dir(&emit).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 3);
    for file in &files {
        let out = tfvs(&["check", file.to_str().unwrap()]);
        let text = stdout(&out);
        assert_eq!(field(&text, "t7_free"), "yes");
        let t5 = field(&text, "t5_free");
        assert_eq!(t5, "no, witness {0, 1, 2, 3, 4}", "{}", file.display());
    }
    assert_eq!(tfvs(&["enumerate", "--order", "8", "--forbidden", "5"]).status.code(), Some(1));
}

#[test]
fn check_reports() {
    let dir = TempDir::new().unwrap();
    let p7 = paley7(&dir);
    let text = stdout(&tfvs(&["check", &p7]));
    assert_eq!(field(&text, "t7_free"), "no, witness {0, 1, 2, 3, 4, 5, 6}");
    let tt = write(&dir, "tt.txt", "3\n1 1 1\n-11\n0-1\n00-\n");
    let text = stdout(&tfvs(&["check", &tt]));
    for key in ["transitive", "t5_free", "t7_free"] {
        assert_eq!(field(&text, key), "yes");
    }
    let json = stdout(&tfvs(&["check", &p7, "--format", "json"]));
    assert!(json.contains("\"t5_free\":{\"holds\":false"));
}

#[test]
fn bench_table_is_deterministic() {
    let args = ["bench", "--trials", "12", "--n-min", "3", "--n-max", "9", "--seed", "7", "--max-weight", "10"];
    let a = tfvs(&args);
    assert_eq!(a.status.code(), Some(0));
    let mut sequential = args.to_vec();
    sequential.push("--sequential");
    assert_eq!(stdout(&a), stdout(&tfvs(&sequential)));
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 13);
    assert!(text.contains("bound 7/3 holds"));
}

#[test]
fn bench_single_triangle() {
    let out = tfvs(&["bench", "--trials", "1", "--n", "3", "--max-weight", "3", "--seed", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("bound 7/3 holds"));
    assert_eq!(tfvs(&["bench", "--n", "19"]).status.code(), Some(1));
}

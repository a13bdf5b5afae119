use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn sp_order_counts() {
    for (dims, want) in [("2", "6"), ("2,2", "720"), ("3", "24")] {
        let out = hsym(&["sp-order", "--dims", dims]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), want);
    }
    let out = hsym(&["sp-order", "--dims", "2,3", "--method", "both"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0].split(' ').nth(1), lines[1].split(' ').nth(1));
}

#[test]
fn listings_are_identical_across_methods() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    assert_eq!(code(&hsym(&["sp-order", "--dims", "2,2", "--emit", a.to_str().unwrap()])), 0);
    assert_eq!(
        code(&hsym(&["sp-order", "--dims", "2,2", "--method", "brute", "--emit", b.to_str().unwrap(), "--jobs", "2"])),
        0
    );
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("dims: 2,2\n"));
    assert_eq!(text.lines().count(), 721);
}

#[test]
fn cap_exceeded_is_resource_error() {
    let out = hsym(&["sp-order", "--dims", "2,2", "--cap", "10"]);
    assert_eq!(code(&out), 3);
    assert_eq!(code(&hsym(&["sp-order", "--dims", "5,5,5", "--method", "brute"])), 3);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&hsym(&["sp-order", "--dims", "1,2"])), 2);
    assert_eq!(code(&hsym(&["sp-order", "--dims", "2", "--cap", "0"])), 2);
    assert_eq!(code(&hsym(&["mub", "verify", "nowhere.json", "--tol", "0"])), 2);
    assert_eq!(code(&hsym(&["frobnicate"])), 2);
}

#[test]
fn sp_check_files() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.txt", "dims: 2,2\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    assert_eq!(code(&hsym(&["sp-check", "--dims", "2,2", &id])), 0);
    let j = write(dir.path(), "j.txt", "dims: 3\n# J\n0 1\n2 0\n");
    assert_eq!(code(&hsym(&["sp-check", "--dims", "3", &j])), 0);
    let not = write(dir.path(), "n.txt", "dims: 3\n1 1\n1 1\n");
    let out = hsym(&["sp-check", "--dims", "3", &not]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("NOT SYMPLECTIC"));
    let bad = write(dir.path(), "b.txt", "dims: 2,2\n1 0 0 0\n0 1 0 0\n0 0 3 0\n0 0 0 1\n");
    let out = hsym(&["sp-check", "--dims", "2,2", &bad]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(code(&hsym(&["sp-check", "--dims", "2,3", &id])), 2);
}

#[test]
fn orbit_reports_transitivity() {
    for dims in ["2", "2,2", "3"] {
        let out = hsym(&["orbit", "--dims", dims]);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        let sizes: Vec<&str> = text.lines().take(2).map(|l| l.split(' ').nth(1).unwrap()).collect();
        assert_eq!(sizes[0], sizes[1]);
        assert!(text.contains("TRANSITIVE"));
    }
    assert!(stdout(&hsym(&["orbit", "--dims", "2"])).starts_with("orbit 6\ndelta 6\n"));
}

#[test]
fn heisenberg_checklist() {
    let out = hsym(&["heisenberg-verify", "--dims", "2,3,4"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    for item in ["P Q = w Q P", "Weyl commutation", "R conjugation", "R images", "kernel", "generator images"] {
        let line = text.lines().find(|l| l.contains(item)).unwrap();
        assert!(line.starts_with("PASS"), "{line}");
    }
    let d_line = text.lines().find(|l| l.contains("D images")).unwrap();
    assert!(d_line.starts_with("FAIL"));
    assert_eq!(code(&out), 1);
    let skipped = stdout(&hsym(&["heisenberg-verify", "--dims", "2,2", "--cap", "4"]));
    assert_eq!(skipped.lines().filter(|l| l.starts_with("SKIP")).count(), 2);
}

#[test]
fn mub_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    let f = f.to_str().unwrap();
    assert_eq!(code(&hsym(&["mub", "generate", "-p", "2", "-n", "2", "--out", f])), 0);
    let out = hsym(&["mub", "verify", f]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["unbiased"]["bases"], 5);
    assert!(report["unbiased"]["max_pair_deviation"].as_f64().unwrap() <= 1e-9);

    let again = hsym(&["mub", "generate", "-p", "2", "-n", "2"]);
    assert_eq!(stdout(&again), fs::read_to_string(f).unwrap());
}

#[test]
fn mub_prime_count() {
    let out = hsym(&["mub", "generate", "-p", "3", "-n", "1"]);
    let family: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(family["bases"].as_array().unwrap().len(), 4);
}

#[test]
fn mub_verify_detects_damage() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&hsym(&["mub", "generate", "-p", "3", "-n", "1"]));
    let mut family: serde_json::Value = serde_json::from_str(&text).unwrap();
    for z in family["bases"][1]["vectors"][0].as_array_mut().unwrap() {
        *z = serde_json::json!([0.0, 0.0]);
    }
    let f = write(dir.path(), "bad.json", &serde_json::to_string(&family).unwrap());
    let out = hsym(&["mub", "verify", &f]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let g = report["unbiased"]["gram_residuals"][1].as_f64().unwrap();
    assert!((g - 1.0).abs() < 1e-9);
}

#[test]
fn mub_errors_are_json() {
    let out = hsym(&["mub", "generate", "-p", "6"]);
    assert_eq!(code(&out), 2);
    let err: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(err["pass"], false);
    assert_eq!(code(&hsym(&["mub", "generate", "-p", "2", "-n", "11"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "x.json", "{\"p\": 2");
    assert_eq!(code(&hsym(&["mub", "verify", &f])), 2);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use backdoors::formula::dimacs::write_dimacs;
use backdoors::genbench::{backdoor_tree_family, random_cnf};
use backdoors::{Assignment, CnfFormula};
use serde_json::Value;
use tempfile::TempDir;

fn backdoor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_backdoor")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, f: &CnfFormula) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, write_dimacs(f)).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn family(dir: &TempDir, n: usize) -> PathBuf {
    write(dir, &format!("family{n}.cnf"), &backdoor_tree_family(n).unwrap().formula)
}

fn without_timing(out: &Output) -> Value {
    let mut v = report(out);
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

fn model_count(f: &CnfFormula) -> u64 {
    Assignment::all_over(&f.vars()).filter(|t| f.is_satisfied_by(t)).count() as u64
}

#[test]
fn report_schema() {
    let dir = TempDir::new().unwrap();
    let f = family(&dir, 2);
    let runs = [
        vec!["recognize", s(&f), "--class", "rhorn"],
        vec!["solve", s(&f)],
        vec!["detect", s(&f), "--kind", "weak", "--class", "clu", "--k", "2"],
        vec!["evaluate", s(&f), "--class", "horn", "--backdoor", "5,6"],
        vec!["count", s(&f), "--class", "clu"],
        vec!["tree", s(&f), "--class", "horn"],
    ];
    for args in runs {
        let out = backdoor(&args);
        assert!(code(&out) <= 1, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v = report(&out);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 6, "{args:?}");
        for key in ["command", "input_digest", "result", "algorithm", "wall_time_ms", "seed"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        assert_eq!(v["command"][0], args[0]);
        assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
        assert!(v["wall_time_ms"].is_u64());
        assert!(v["result"].is_object());
    }
}

#[test]
fn recognize_exit_codes() {
    let dir = TempDir::new().unwrap();
    let horn = write(&dir, "horn.cnf", &backdoors::cnf![[-1, 2], [-2, -3]]);
    let out = backdoor(&["recognize", s(&horn), "--class", "horn"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["member"], true);

    let out = backdoor(&["recognize", s(&family(&dir, 1)), "--class", "horn"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["result"]["member"], false);

    let bad = dir.path().join("bad.cnf");
    std::fs::write(&bad, "p cnf 1 1\n1 -1 0\n").unwrap();
    let out = backdoor(&["recognize", s(&bad), "--class", "horn"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("tautological"));
    assert_eq!(code(&backdoor(&["recognize", s(&bad), "--class", "horn", "--strip-tautologies"])), 0);

    assert_eq!(code(&backdoor(&["recognize", "/nonexistent.cnf", "--class", "horn"])), 2);
    assert_eq!(code(&backdoor(&["recognize", s(&horn), "--class", "nonsense"])), 2);
}

#[test]
fn recognize_reports_renaming_and_subsolver_outcome() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "pair.cnf", &backdoors::cnf![[1, 2]]);
    let v = report(&backdoor(&["recognize", s(&f), "--class", "rhorn"]));
    assert_eq!(v["result"]["renaming"].as_array().unwrap().len(), 1);
    let v = report(&backdoor(&["recognize", s(&f), "--class", "pl"]));
    assert_eq!(v["result"]["outcome"], "decided-sat");
}

#[test]
fn detect_tree_family() {
    let dir = TempDir::new().unwrap();
    let f = family(&dir, 2);
    let out = backdoor(&["detect", s(&f), "--kind", "strong", "--class", "horn", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let v = report(&out);
    assert_eq!(v["result"]["variables"], serde_json::json!([5, 6]));
    assert_eq!(v["result"]["minimum"], true);
    assert_eq!(v["algorithm"], "strong-vertex-cover");

    let out = backdoor(&["detect", s(&f), "--kind", "strong", "--class", "horn", "--k", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["result"]["found"], false);

    let out = backdoor(&["detect", s(&f), "--kind", "strong", "--class", "horn", "--k", "2", "--algorithm", "bruteforce"]);
    assert_eq!(report(&out)["result"]["variables"], serde_json::json!([5, 6]));
    assert_eq!(report(&out)["algorithm"], "brute-force");
}

#[test]
fn detect_named_algorithms() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cycle.cnf", &backdoors::cnf![[1, 2], [-1, -2]]);
    let out = backdoor(&["detect", s(&f), "--kind", "deletion", "--class", "forest", "--k", "1", "--algorithm", "deletion-forest-cycles"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["size"], 1);

    let out = backdoor(&["detect", s(&f), "--kind", "strong", "--class", "forest", "--k", "1", "--algorithm", "deletion-forest-cycles"]);
    assert_eq!(code(&out), 2);
    let out = backdoor(&["detect", s(&f), "--kind", "strong", "--class", "forest", "--k", "1", "--algorithm", "specialized"]);
    assert_eq!(code(&out), 2);
    let out = backdoor(&["detect", s(&f), "--kind", "strong", "--class", "horn", "--k", "1", "--algorithm", "no-such-thing"]);
    assert_eq!(code(&out), 2);

    let out = backdoor(&["detect", s(&f), "--kind", "deletion", "--class", "rhorn", "--k", "1"]);
    assert_eq!(report(&out)["result"]["certificate"]["type"], "renaming");
}

#[test]
fn deletion_into_subsolver_classes_is_an_error() {
    let dir = TempDir::new().unwrap();
    let f = family(&dir, 2);
    for class in ["up", "pl", "up-pl", "up+empty"] {
        let out = backdoor(&["detect", s(&f), "--kind", "deletion", "--class", class, "--k", "1"]);
        assert_eq!(code(&out), 2, "{class}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("deletion undefined for subsolver classes"));
    }
}

#[test]
fn budget_exceeded_is_distinct_from_none_within() {
    let dir = TempDir::new().unwrap();
    // brute force over 30 variables up to size 6 needs more than 2^24 checks
    let f = random_cnf(30, 80, 3, 5).unwrap();
    assert_eq!(f.num_vars(), 30);
    let f = write(&dir, "big.cnf", &f);
    let out = backdoor(&["detect", s(&f), "--kind", "strong", "--class", "rhorn", "--k", "6"]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["result"]["status"], "budget-exceeded");
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));

    let small = write(&dir, "complete.cnf", &backdoors::cnf![[1, 2], [-1, 2], [1, -2], [-1, -2]]);
    let out = backdoor(&["detect", s(&small), "--kind", "strong", "--class", "rhorn+empty", "--k", "0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["result"]["found"], false);
}

#[test]
fn solve_agrees_with_enumeration() {
    let dir = TempDir::new().unwrap();
    for seed in 0..12 {
        let f = random_cnf(7, 12, 3, seed).unwrap();
        let path = write(&dir, &format!("r{seed}.cnf"), &f);
        let expect = model_count(&f) > 0;
        for class in ["horn", "2cnf", "clu"] {
            let out = backdoor(&["solve", s(&path), "--class", class]);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
            let v = report(&out);
            assert_eq!(v["result"]["status"] == "sat", expect, "seed {seed} class {class}");
            if expect {
                let model: Assignment = v["result"]["model"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|l| {
                        let l = l.as_i64().unwrap();
                        (backdoors::Var::new(l.unsigned_abs() as u32), l > 0)
                    })
                    .collect();
                assert!(f.is_satisfied_by(&model));
            }
        }
    }
}

#[test]
fn uniform_count_scales_to_model_count() {
    let dir = TempDir::new().unwrap();
    for seed in 0..10 {
        let f = random_cnf(6, 7, 3, 100 + seed).unwrap();
        let path = write(&dir, &format!("c{seed}.cnf"), &f);
        let scale = 1u64 << f.num_vars();
        for class in ["clu", "forest"] {
            let out = backdoor(&["count", s(&path), "--class", class]);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
            let v = report(&out);
            assert_eq!(v["result"]["models"], model_count(&f).to_string(), "seed {seed} class {class}");
            let count = v["result"]["count"].as_str().unwrap().to_string();
            let (num, den) = count.split_once('/').unwrap_or((&count, "1"));
            let (num, den): (u64, u64) = (num.parse().unwrap(), den.parse().unwrap());
            assert_eq!(num * scale, model_count(&f) * den);
        }
    }
}

#[test]
fn weighted_count_from_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "unit.cnf", &backdoors::cnf![[1]]);
    let w = dir.path().join("w.txt");
    std::fs::write(&w, "w 1 1/3\n").unwrap();
    let v = report(&backdoor(&["count", s(&f), "--weights", s(&w)]));
    assert_eq!(v["result"]["count"], "1/3");
    assert!(v["result"].get("models").is_none());
    assert_eq!(code(&backdoor(&["count", s(&f), "--class", "horn"])), 2);
}

#[test]
fn evaluate_checks_the_backdoor() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "path.cnf", &backdoors::cnf![[1, 2], [2, 3]]);
    let v = report(&backdoor(&["evaluate", s(&f), "--class", "horn", "--backdoor", "2"]));
    assert_eq!(v["result"]["status"], "sat");
    assert_eq!(code(&backdoor(&["evaluate", s(&f), "--class", "horn", "--backdoor", ""])), 2);

    let unsat = write(&dir, "unsat.cnf", &backdoors::cnf![[1], [-1]]);
    let v = report(&backdoor(&["evaluate", s(&unsat), "--class", "horn", "--backdoor", "", "--kind", "weak"]));
    assert_eq!(v["result"]["status"], "not-witnessed");
    let v = report(&backdoor(&["evaluate", s(&f), "--class", "horn", "--backdoor", "2", "--kind", "deletion"]));
    assert_eq!(v["result"]["status"], "sat");
}

#[test]
fn tree_search_and_validation() {
    let dir = TempDir::new().unwrap();
    let f = family(&dir, 2);
    let out = backdoor(&["tree", s(&f), "--class", "horn", "--over", "5,6"]);
    assert_eq!(report(&out)["result"]["leaves"], 4);
    let out = backdoor(&["tree", s(&f), "--class", "horn", "--over", "5,6", "--max-leaves", "3"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["result"]["found"], false);

    let caterpillar = "(1 0:[in-class] 1:(2 0:[in-class] 1:(3 0:[in-class] 1:(4 0:[in-class] 1:[in-class]))))";
    let out = backdoor(&["tree", s(&f), "--class", "horn", "--validate", caterpillar]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["leaves"], 5);
    let out = backdoor(&["tree", s(&f), "--class", "horn", "--validate", "(9 0:[in-class] 1:[in-class])"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["result"]["foreign_variable"], 9);
    assert_eq!(code(&backdoor(&["tree", s(&f), "--class", "horn", "--validate", "(1 0:"])), 2);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "r.cnf", &random_cnf(8, 10, 3, 9).unwrap());
    let runs: [&[&str]; 3] = [
        &["detect", s(&f), "--kind", "strong", "--class", "clu", "--k", "8"],
        &["count", s(&f), "--class", "forest"],
        &["tree", s(&f), "--class", "2cnf"],
    ];
    for args in runs {
        let first = without_timing(&backdoor(args));
        let mut parallel: Vec<&str> = args.to_vec();
        parallel.extend(["--jobs", "4"]);
        let mut serial: Vec<&str> = args.to_vec();
        serial.extend(["--jobs", "1"]);
        let (mut a, mut b) = (without_timing(&backdoor(&parallel)), without_timing(&backdoor(&serial)));
        a.as_object_mut().unwrap().remove("command");
        b.as_object_mut().unwrap().remove("command");
        assert_eq!(a, b, "{args:?}");
        assert_eq!(first, without_timing(&backdoor(args)), "{args:?}");
        assert_eq!(a["result"], first["result"]);
    }
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_backdoor"))
        .args(["recognize", "-", "--class", "2cnf"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write as _;
    child.stdin.take().unwrap().write_all(b"p cnf 2 1\n1 2 0\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn generate_reproduces_the_fixture() {
    let dir = TempDir::new().unwrap();
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/hs_weak_seed4.cnf");
    let out = dir.path().join("hs.cnf");
    let args = ["generate", "--construction", "hs-weak", "--class", "horn", "--seed", "4", "--k", "1", "--m", "3", "--elements", "4", "--width", "3"];
    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend(["--out", s(&out)]);
    let run = backdoor(&with_out);
    assert_eq!(code(&run), 0);
    assert_eq!(report(&run)["seed"], 4);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&fixture).unwrap());
    let sidecar = |p: &Path| std::fs::read(format!("{}.json", p.display())).unwrap();
    assert_eq!(sidecar(&out), sidecar(&fixture));

    let stdout = backdoor(&args);
    assert_eq!(stdout.stdout, std::fs::read(&fixture).unwrap());

    let hs = report(&backdoor(&["detect", s(&out), "--kind", "weak", "--class", "horn", "--k", "1"]));
    assert_eq!(hs["result"]["variables"], serde_json::json!([3]));
}

#[test]
fn generate_constructions() {
    let ok = |args: &[&str]| {
        let out = backdoor(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    };
    assert!(ok(&["generate", "--construction", "tree-family", "--n", "1"]).contains("p cnf 3 2"));
    assert!(ok(&["generate", "--construction", "or-gadget", "--class", "clu", "--vars", "1"]).ends_with("1 2 0\n2 0\n"));
    assert!(ok(&["generate", "--construction", "rhorn-weak", "--vars", "1"]).contains("p cnf 3 4"));
    assert!(ok(&["generate", "--construction", "strong-rhorn", "--sets", "1", "--k", "0"]).contains("p cnf 3 4"));
    let clique = ok(&["generate", "--construction", "pclique", "--parts", "1;2", "--edges", ""]);
    assert!(clique.contains("-1 -2 0"));
    let a = ok(&["generate", "--construction", "random", "--n", "5", "--m", "6", "--seed", "3"]);
    assert_eq!(a, ok(&["generate", "--construction", "random", "--n", "5", "--m", "6", "--seed", "3"]));

    assert_eq!(code(&backdoor(&["generate", "--construction", "or-gadget", "--class", "up", "--vars", "1"])), 2);
    assert_eq!(code(&backdoor(&["generate", "--construction", "tree-family"])), 2);
}

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use signdet::cli::{cmd_bench, cmd_selftest, parse_instance, BenchOptions, ParseError};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_signdet"))
}

fn instances() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    v.sort();
    v
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn signs_text_example() {
    let o = run_stdin(&["signs", "-"], "P0: 0,-1,0,1\nP1: 0,1\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "m=3\n0 : 1\n1 : 1\n-1 : 1\n");
}

#[test]
fn bundled_instances_pass_cross_checks() {
    let files = instances();
    assert!(files.len() >= 3);
    for f in files {
        let o = bin().args(["signs", "--oracle", "--naive"]).arg(&f).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{}: {}", f.display(), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn json_and_text_carry_the_same_data() {
    for f in instances() {
        let text = stdout(&bin().args(["signs", "--count-ops"]).arg(&f).output().unwrap());
        let json = stdout(&bin().args(["signs", "--count-ops", "--format", "json"]).arg(&f).output().unwrap());
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();

        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), format!("m={}", v["m"]));
        for row in v["rows"].as_array().unwrap() {
            let signs: Vec<String> = row["signs"].as_array().unwrap().iter().map(|s| s.to_string()).collect();
            let expect = if signs.is_empty() {
                format!(": {}", row["count"])
            } else {
                format!("{} : {}", signs.join(" "), row["count"])
            };
            assert_eq!(lines.next().unwrap(), expect);
        }
        let steps = v["ops"].as_array().unwrap();
        let total: u64 = steps.iter().map(|s| s["ops"].as_u64().unwrap()).sum();
        assert_eq!(lines.next().unwrap(), format!("ops_total={total}"));
        for s in steps {
            assert_eq!(
                lines.next().unwrap(),
                format!("step={} r={} ops={} budget={}", s["step"], s["r"], s["ops"], s["budget"])
            );
            assert!(s["ops"].as_u64() <= s["budget"].as_u64());
        }
        assert!(lines.next().is_none());
    }
}

#[test]
fn input_errors_exit_with_one() {
    let o = run_stdin(&["signs", "-"], "P1: 1\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing P0"));
    let o = run_stdin(&["signs", "-"], "P0: 1,x\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    let o = bin().args(["signs", "/nonexistent/instance.txt"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors() {
    assert_eq!(parse_instance("P1: 1"), Err(ParseError::MissingP0));
    assert!(matches!(parse_instance("P0: 0,0"), Err(ParseError::ZeroP0(1))));
    assert!(matches!(parse_instance("P0: 1\nP1: 1\nP1: 2"), Err(ParseError::Line { line: 3, .. })));
    assert!(matches!(parse_instance("P0: 1/0"), Err(ParseError::Line { line: 1, .. })));
}

#[test]
fn bench_example_and_determinism() {
    let args = ["bench", "--seed", "1", "--trials", "1", "--degree", "4", "--num-polys", "2"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&a);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "seed,trial,step,r,ops,budget,ratio");
    assert_eq!(lines.clone().count(), 2);
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 7);
        let (ops, budget): (u64, u64) = (f[4].parse().unwrap(), f[5].parse().unwrap());
        assert!(ops <= budget);
    }
}

#[test]
fn bench_rows_stay_within_budget() {
    for optimized in [false, true] {
        let csv = cmd_bench(&BenchOptions {
            seed: 9,
            degree: 10,
            num_polys: 5,
            trials: 8,
            coeff_bound: 30,
            optimized,
        })
        .unwrap();
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(rows.len(), 8 * 5);
        for line in rows {
            let f: Vec<&str> = line.split(',').collect();
            assert!(f[4].parse::<u64>().unwrap() <= f[5].parse::<u64>().unwrap(), "{line}");
        }
    }
}

#[test]
fn selftest_passes() {
    for g in cmd_selftest(1) {
        assert!(g.passed(), "{}: {:?}", g.name, g.failures);
        assert!(g.checks > 0);
    }
    let o = bin().args(["selftest", "--seed", "5"]).output().unwrap();
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 3);
}

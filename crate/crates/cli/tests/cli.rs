use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const STAR: &str = "ecc 1\nnodes 1\ncolors 3\ne 0 1 0\ne 1 1 0\ne 2 1 0\n";

fn ecc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = ecc(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    ecc(args).status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn q(v: &Value) -> ecc_core::Rational {
    v.as_str().expect("rationals serialize as strings").parse().unwrap()
}

#[test]
fn solve_star_local() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "star.ecc", STAR);
    let r: Value = serde_json::from_str(&ok(&["solve", "local", "--input", s(&inst), "--budget", "1"])).unwrap();
    assert_eq!(r["mistakes"], "2");
    assert_eq!(r["lower_bound"], "2");
    assert_eq!(r["lower_bound_source"], "dual-certificate");
    assert_eq!(r["claimed_ratio"], "2");
    assert_eq!(r["instance"], "star.ecc");
    assert!(r.get("wall_time_us").map_or(true, Value::is_null));

    let r: Value =
        serde_json::from_str(&ok(&["solve", "local", "--input", s(&inst), "--budget", "1", "--no-fill"])).unwrap();
    assert_eq!(r["mistakes"], "3");
}

#[test]
fn solve_reads_stdin_and_writes_csv() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ecc"))
        .args(["solve", "robust", "--budget", "0", "--format", "csv"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write as _;
    child.stdin.take().unwrap().write_all(STAR.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("mistakes"));
    assert!(lines.next().unwrap().starts_with("<stdin>,robust,"));
    assert!(lines.next().is_none());
}

#[test]
fn bicriteria_threshold_is_reported() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("gap.ecc");
    ok(&["gen", "ig-robust", "--budget", "2", "--output", s(&inst)]);
    for (eps, tau) in [("2", 1), ("1/2", 7), ("4", 0)] {
        let r: Value =
            serde_json::from_str(&ok(&["solve", "robust", "--input", s(&inst), "--budget", "2", "--epsilon", eps]))
                .unwrap();
        assert_eq!(r["tau"], tau, "ε = {eps}");
        let bound = (ecc_core::Rational::from(2u64) + eps.parse::<ecc_core::Rational>().unwrap()) * q(&r["lower_bound"]);
        assert!(q(&r["mistakes"]) <= bound);
    }
    assert_eq!(code(&["solve", "robust", "--input", s(&inst), "--budget", "2", "--epsilon", "5"]), 3);
    assert_eq!(code(&["solve", "robust", "--input", s(&inst), "--budget", "2", "--epsilon", "x"]), 1);
}

#[test]
fn global_zero_budget_on_one_color() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "mono.ecc", "ecc 1\nnodes 3\ncolors 1\ne 0 1 0 1\ne 0 2 1 2\n");
    let r: Value = serde_json::from_str(&ok(&["solve", "global", "--input", s(&inst), "--budget", "0"])).unwrap();
    assert_eq!(r["mistakes"], "0");
    assert_eq!(r["trivial"], true);
}

#[test]
fn oracle_bound_and_limits() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("gap.ecc");
    ok(&["gen", "ig-local", "--budget", "2", "--edges", "5", "--output", s(&inst)]);
    let o: Value = serde_json::from_str(&ok(&["oracle", "local", "--input", s(&inst), "--budget", "2"])).unwrap();
    let opt = q(&o["cost"]);
    let r: Value =
        serde_json::from_str(&ok(&["solve", "local", "--input", s(&inst), "--budget", "2", "--oracle"])).unwrap();
    assert_eq!(r["lower_bound_source"], "exact-oracle");
    assert_eq!(q(&r["lower_bound"]), opt);
    for route in ["node-options", "edge-subsets"] {
        let o: Value =
            serde_json::from_str(&ok(&["oracle", "local", "--input", s(&inst), "--budget", "2", "--route", route]))
                .unwrap();
        assert_eq!(q(&o["cost"]), opt);
        assert_eq!(o["route"], route);
    }
    assert_eq!(
        code(&["oracle", "local", "--input", s(&inst), "--budget", "2", "--max-search-space", "1"]),
        5
    );
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let garbage = write(&dir, "bad.ecc", "ecc 1\nnodes two\n");
    let out = ecc(&["solve", "local", "--input", s(&garbage), "--budget", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let range = write(&dir, "range.ecc", "ecc 1\nnodes 1\ncolors 1\ne 0 1 3\n");
    assert_eq!(code(&["solve", "local", "--input", s(&range), "--budget", "1"]), 3);

    let star = write(&dir, "star.ecc", STAR);
    let budgets = write(&dir, "b.txt", "1 2\n");
    assert_eq!(code(&["solve", "local", "--input", s(&star), "--budgets-file", s(&budgets)]), 3);
    assert_eq!(code(&["solve", "local", "--input", s(&star), "--budget", "0"]), 3);
    assert_eq!(code(&["solve", "local", "--input", s(&star)]), 1);
    assert_eq!(code(&["solve", "nonsense", "--input", s(&star), "--budget", "1"]), 1);
    assert_eq!(code(&["solve", "local", "--input", s(&dir.path().join("missing.ecc")), "--budget", "1"]), 1);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("r.ecc");
    ok(&["gen", "random", "--nodes", "12", "--edges", "30", "--colors", "4", "--seed", "3", "--output", s(&inst)]);
    let report = dir.path().join("report.json");
    ok(&["solve", "global", "--input", s(&inst), "--budget", "2", "--output", s(&report)]);
    assert!(ok(&["verify", "--input", s(&inst), "--report", s(&report)]).starts_with("ok:"));

    let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let lambda = q(&r["certificate"]["lambda"]);
    r["certificate"]["lambda"] = Value::String((lambda + ecc_core::Rational::one()).to_string());
    let tampered = write(&dir, "tampered.json", &r.to_string());
    assert_eq!(code(&["verify", "--input", s(&inst), "--report", s(&tampered)]), 4);

    let other = write(&dir, "other.ecc", STAR);
    assert_ne!(code(&["verify", "--input", s(&other), "--report", s(&report)]), 0);
}

#[test]
fn bench_gap_instances() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data");
    std::fs::create_dir(&data).unwrap();
    for b in 1..=3 {
        let p = data.join(format!("gap{b}.ecc"));
        ok(&["gen", "ig-local", "--budget", &b.to_string(), "--edges", "6", "--output", s(&p)]);
    }
    std::fs::write(data.join("notes.txt"), "ignored").unwrap();
    let summary = dir.path().join("summary.csv");
    let csv = ok(&[
        "bench", "--dir", s(&data), "--problems", "local", "--local-grid", "1,2,3", "--no-timing", "--summary",
        s(&summary),
    ]);
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    for row in &rows {
        assert!(row[col("error")].is_empty());
        let b: u64 = row[col("grid_value")].parse().unwrap();
        let ratio: ecc_core::Rational = row[col("claimed_ratio")].parse().unwrap();
        assert_eq!(ratio, ecc_core::Rational::from(b + 1));
        if let Ok(measured) = row[col("measured_ratio")].parse::<ecc_core::Rational>() {
            assert!(measured <= ratio);
        }
    }
    assert!(std::fs::read_to_string(summary).unwrap().starts_with("problem,"));

    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    ok(&["bench", "--dir", s(&empty), "--no-timing"]);
    assert_eq!(code(&["bench", "--dir", s(&dir.path().join("absent"))]), 1);
}

#[test]
fn import_and_stats() {
    let dir = TempDir::new().unwrap();
    let tsv = write(&dir, "pairs.tsv", "red\ta,b\nblue\tb,c\nred\tc,d\n");
    let labels = dir.path().join("labels.tsv");
    let text = ok(&["import", "--input", s(&tsv), "--labels", s(&labels)]);
    assert!(text.contains("nodes 4") && text.contains("colors 2"));
    let labels = std::fs::read_to_string(labels).unwrap();
    assert!(labels.contains("node\t3\td") && labels.contains("color\t1\tblue"));

    let st: Value = serde_json::from_str(&ok(&["stats", "--input", s(&tsv), "--budget", "1"])).unwrap();
    assert_eq!(st["node_count"], 4);
    assert_eq!(st["edge_count"], 3);
    assert_eq!(st["rank"], 2);
    assert_eq!(st["trivial"]["local"], false);
    assert_eq!(st["trivial"]["global"], false);
}

#[test]
fn generators_are_seeded() {
    let a = ok(&["gen", "random", "--nodes", "20", "--edges", "40", "--colors", "3", "--seed", "7"]);
    let b = ok(&["gen", "random", "--nodes", "20", "--edges", "40", "--colors", "3", "--seed", "7"]);
    let c = ok(&["gen", "random", "--nodes", "20", "--edges", "40", "--colors", "3", "--seed", "8"]);
    assert_eq!(a, b);
    assert_ne!(a, c);

    let dir = TempDir::new().unwrap();
    let kvc = write(&dir, "tri.kvc", "kvc 3 2\n0 1\n1 2\n0 2\n");
    let inst = dir.path().join("tri.ecc");
    ok(&["gen", "ekvc", "--input", s(&kvc), "--output", s(&inst)]);
    // A triangle needs two cover vertices.
    let o: Value = serde_json::from_str(&ok(&["oracle", "local", "--input", s(&inst), "--budget", "1"])).unwrap();
    assert_eq!(o["cost"], "2");

    let frac = dir.path().join("frac.json");
    ok(&["gen", "ig-global", "--budget", "1", "--fractional", s(&frac)]);
    let f: Value = serde_json::from_str(&std::fs::read_to_string(frac).unwrap()).unwrap();
    assert!(f.get("x").is_some());
}

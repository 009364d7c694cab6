use std::path::Path;
use std::process::{Command, Output};

use edgesched::report::{parse_results, ScheduleFile};
use edgesched::scenario::{generate_instance, ScenarioConfig};
use edgesched::sched::{gus, happy_computation, Algorithm};

fn edgesched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgesched")).args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn simulate_writes_runs_times_algorithms_rows() {
    let o = edgesched(&["simulate", "--config", "paper_default", "--runs", "100", "--seed", "7", "--algs", "gus,random"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = parse_results(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 200);
    assert!(stderr(&o).contains('%'));
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["simulate", "--config", "small", "--runs", "64", "--seed", "3"];
    let one = Command::new(env!("CARGO_BIN_EXE_edgesched")).args(args).env("EDGESCHED_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_edgesched")).args(args).env("EDGESCHED_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_edgesched")).args(args).env("EDGESCHED_THREADS", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let args = ["sweep", "--config", "small", "--runs", "10", "--sweep", "n_requests=2,4,6"];
    let piped = edgesched(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(edgesched(&with_out).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}

#[test]
fn compare_reports_the_gus_ratio() {
    let o = edgesched(&["compare", "--config", "small", "--runs", "50", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("mean(US_gus / US_exact) = "));
    let table = String::from_utf8(o.stdout).unwrap();
    assert!(table.lines().any(|l| l.starts_with("exact,") && l.ends_with(",1.000000,1.000000,1.000000")));
}

#[test]
fn solve_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let p = path.to_str().unwrap();
    let o = edgesched(&["solve", "--config", "small", "--seed", "4", "--algs", "exact", "--out", p]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = edgesched(&["validate", p]);
    assert!(v.status.success(), "{}", stderr(&v));
    assert!(String::from_utf8(v.stdout).unwrap().starts_with("valid"));
}

fn corrupted_schedule_file(dir: &Path) -> std::path::PathBuf {
    // A schedule that ignores computation capacity, labelled as one that
    // must respect it.
    let config = ScenarioConfig::paper_default();
    let (instance, schedule) = (0..)
        .map(|seed| {
            let inst = generate_instance(&config, seed).unwrap();
            let s = happy_computation(&inst);
            (inst, s)
        })
        .find(|(inst, s)| s.satisfied_count > gus(inst).satisfied_count)
        .unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, ScheduleFile::new(Algorithm::Gus, instance, schedule).to_json()).unwrap();
    path
}

#[test]
fn validate_names_the_capacity_constraint() {
    let dir = tempfile::tempdir().unwrap();
    let path = corrupted_schedule_file(dir.path());
    let o = edgesched(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("(2d)"), "{}", stderr(&o));
}

#[test]
fn malformed_config_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, "{\n  \"version\": 1,\n  \"scenario\": 5\n}\n").unwrap();
    let o = edgesched(&["simulate", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn oversized_exact_exits_3() {
    for args in [
        &["solve", "--config", "paper_default", "--algs", "exact"][..],
        &["simulate", "--config", "paper_default", "--runs", "1", "--algs", "brute-force"][..],
    ] {
        assert_eq!(edgesched(args).status.code(), Some(3));
    }
}

#[test]
fn show_config_output_is_a_loadable_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let o = edgesched(&["show-config", "--config", "testbed", "--runs", "9"]);
    assert!(o.status.success());
    std::fs::write(&path, &o.stdout).unwrap();
    let again = edgesched(&["show-config", "--config", path.to_str().unwrap()]);
    assert_eq!(again.stdout, o.stdout);
}

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbymatch")).args(args).output().expect("binary runs")
}

fn instance(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_json_record() {
    let f = instance("cycle RBYBRBYB\nrequire 1 2\n");
    let o = run(&["solve", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 3);
    assert_eq!(v["profile"]["red"], 1);
    assert_eq!(v["alpha_star"], "4/1");
    assert_eq!(v["guarantee"]["red_exact"], true);
    let ids: Vec<u64> = v["matching"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn exit_codes() {
    let infeasible = instance("graph 3\ne 0 1 B\ne 1 2 B\nrequire 0 2\n");
    assert_eq!(run(&["solve", infeasible.path().to_str().unwrap()]).status.code(), Some(2));
    let bad = instance("graph 2\ne 0 1 Z\nrequire 0 0\n");
    let o = run(&["solve", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let big = (0..22).map(|_| 'R').collect::<String>();
    let cap = instance(&format!("cycle {big}\nrequire 0 0\n"));
    assert_eq!(run(&["oracle", cap.path().to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn verify_accepts_and_rejects() {
    let f = instance("cycle RBYBRBYB\nrequire 1 2\n");
    let p = f.path().to_str().unwrap();
    let o = run(&["verify", p, "--matching", "0,3,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(run(&["verify", p, "--matching", "0,1"]).status.code(), Some(1));
}

#[test]
fn gen_round_trips_through_solve() {
    let o = run(&["gen", "--mode", "feasible_profile", "--nodes", "7", "--seed", "4", "--density", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let again = run(&["gen", "--mode", "feasible_profile", "--nodes", "7", "--seed", "4", "--density", "1/2"]);
    assert_eq!(o.stdout, again.stdout);
    let f = instance(&stdout(&o));
    assert_eq!(run(&["solve", f.path().to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn cycle_fractional_and_curve() {
    let o = run(&["cycle", "BRYRYBYBYRYRB", "--path", "--kr", "3", "--kb", "2"]);
    assert!(stdout(&o).contains("size: 5"));
    let o = run(&["fractional", "RBYBRBYB", "--kr", "1", "--kb", "2/1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["curve", "YBYBYRYRYBRBYRBRBR", "--kr", "3", "--kb", "3", "--pairs", "--points", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["period_length"], 9);
    assert_eq!(v["pairs"][0], serde_json::json!({"u": 4, "v": 1}));
}

#[test]
fn oracle_reports_optimum() {
    let f = instance("cycle RBYBRBYB\nrequire 1 2\n");
    let o = run(&["oracle", f.path().to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exact_size"], 3);
}

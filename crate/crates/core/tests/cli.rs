use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn househunt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_househunt"))
        .args(args)
        .env_remove("HOUSEHUNT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_prints_trace_and_report() {
    let o = househunt(&["run", "--n", "64", "--qualities", "0,1,0", "--seed", "1", "--settle", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (report, records) = lines.split_last().unwrap();
    let report = &report["report"];
    assert_eq!(report["converged"], true);
    assert_eq!(report["winning_nest"], 2);
    assert_eq!(report["stable"], true);
    let settle = report["settle_rounds"].as_u64().unwrap();
    assert_eq!(settle, 10);
    assert_eq!(records.len() as u64, report["rounds_executed"].as_u64().unwrap() + settle);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["round"], i as u64 + 1);
        let total: u64 = r["counts"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
        assert_eq!(total, 64);
    }
}

#[test]
fn no_trace_prints_only_the_report() {
    let o = househunt(&["run", "--algo", "simple", "--n", "32", "--k", "3", "--qualities", "all-good", "--no-trace"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("{\"report\":"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(househunt(&["run", "--n", "0"]).status.code(), Some(2));
    assert_eq!(househunt(&["run", "--n", "8", "--qualities", "0,0"]).status.code(), Some(2));
    assert_eq!(househunt(&["run", "--n", "8", "--k", "3", "--qualities", "1,0"]).status.code(), Some(2));
    assert_eq!(househunt(&["run", "--n", "8", "--qualities", "all-good"]).status.code(), Some(2));
    assert_eq!(househunt(&["bogus"]).status.code(), Some(2));
    assert_eq!(househunt(&["lemma", "nest-delta", "--sizes", "5"]).status.code(), Some(2));
    assert_eq!(househunt(&["lemma", "ratio-growth", "--n", "64", "--k", "2", "--sizes", "40"]).status.code(), Some(2));
}

#[test]
fn round_cap_exits_one() {
    let o = househunt(&["run", "--n", "64", "--k", "2", "--max-rounds", "3", "--no-trace"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["report"]["converged"], false);
}

#[test]
fn nest_delta_lemma_passes() {
    let o = househunt(&["lemma", "nest-delta", "--sizes", "20,10", "--trials", "100000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["check"], "nest-delta");
}

#[test]
fn recruit_success_accepts_cohorts() {
    let o = househunt(&["lemma", "recruit-success", "--home", "1:3,2:3:p", "--trials", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["estimates"][0]["label"], "p_success");
}

#[test]
fn sweep_csv_is_reproducible() {
    let args = ["sweep", "--ns", "32,64", "--ks", "2,3", "--trials", "8", "--seed", "9", "--pattern", "all-good"];
    let a = househunt(&args);
    let b = househunt(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# househunt-summary v1"));
    assert!(lines.next().unwrap().starts_with("algorithm,n,k,trials,converged,median_rounds"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn config_file_and_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# trial settings\nalgo = simple\nn = 40\nk = 2\nqualities = all-good\nno_trace = true\nseed = 4\n")
        .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_househunt"))
        .args(["run", "--config", cfg.to_str().unwrap(), "--seed", "5", "--out", "sub/report.jsonl"])
        .env("HOUSEHUNT_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(dir.path().join("sub/report.jsonl")).unwrap();
    let v: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["report"]["algorithm"], "simple");
    assert_eq!(v["report"]["n"], 40);
    assert_eq!(v["report"]["seed"], 5);
}

#[test]
fn fit_reads_sweep_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = househunt(&[
        "sweep", "--ns", "32,128,512", "--ks", "2", "--trials", "20", "--pattern", "all-good", "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = househunt(&["fit", "--input", csv.to_str().unwrap(), "--model", "log-n"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["points"], 3);
    assert!(v["coefficient"].as_f64().unwrap() > 0.0);
}

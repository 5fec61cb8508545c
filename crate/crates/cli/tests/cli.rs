use std::process::Command;

use qcongruence::congruence::Status;
use qcongruence_cli::{plan, run, Format, Report, RunBlock, RunConfig, DESK_CONFIG};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qcongruence"))
}

fn code(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

fn config(ids: &[&str], n: &str, jobs: usize) -> RunConfig {
    RunConfig {
        jobs,
        runs: vec![RunBlock { ids: ids.iter().map(|s| s.to_string()).collect(), n: Some(n.into()), ..Default::default() }],
        ..Default::default()
    }
}

/// Rows with the timings blanked, serialized.
fn stable(r: &Report) -> String {
    let mut rows = r.rows.clone();
    for row in &mut rows {
        row.elapsed_ms = 0;
    }
    serde_json::to_string(&rows).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "--ids", "THM1", "--n", "3..5"]), 0);
    assert_eq!(code(&["verify", "--ids", "THM99", "--n", "3"]), 2);
    assert_eq!(code(&["verify", "--ids", "THM1", "--n", "4"]), 2);
    assert_eq!(code(&["verify", "--ids", "THM1"]), 2);
    assert_eq!(code(&["verify", "--bogus"]), 2);
    assert_eq!(code(&["verify", "--ids", "THM6", "--n", "5", "--inner-sum-start", "0"]), 1);
    assert_eq!(code(&["verify", "--ids", "CONJ5", "--n", "5", "--conj5-q-multiplier", "2"]), 1);
    assert_eq!(code(&["scan", "--conjectures", "THM1", "--n", "3"]), 2);
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let st = bin()
        .args(["verify", "--ids", "THM1,THM3,COR-16", "--n", "3..7", "--primes", "3,5", "--strategy", "both", "--format", "json"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.rows.len(), 8);
    assert_eq!(report.summary.pass, 8);
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["engine_version", "config", "rows", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["rows"][0]["id"], "COR-16");
    assert_eq!(v["rows"][0]["params"]["p"], 3);
    assert_eq!(v["rows"][2]["params"]["n"], 3);
    assert_eq!(v["rows"][2]["strategy"], "both");
}

#[test]
fn order_is_independent_of_worker_count() {
    let ids = ["THM2", "A1", "CONJ5", "THM1", "BG-RV"];
    let base = stable(&run(&config(&ids, "3..9", 1)).unwrap());
    for jobs in [2, 8] {
        assert_eq!(stable(&run(&config(&ids, "3..9", jobs)).unwrap()), base, "jobs = {jobs}");
    }
}

#[test]
fn thm1_and_thm6_ranges() {
    let r = run(&config(&["THM1"], "3..21", 4)).unwrap();
    assert_eq!(r.rows.len(), 10);
    assert!(r.rows.iter().all(|x| x.status == Status::Pass));
    assert_eq!(r.exit_code(), 0);
    let r = run(&config(&["THM6"], "3..9", 2)).unwrap();
    assert_eq!(r.rows.iter().map(|x| x.params.n.unwrap()).collect::<Vec<_>>(), vec![3, 5, 7, 9]);
    assert!(r.rows.iter().all(|x| x.status == Status::Pass));
}

#[test]
fn failures_force_exit_one() {
    let mut cfg = config(&["THM6"], "3..9", 2);
    cfg.options.inner_sum_start = 0;
    let r = run(&cfg).unwrap();
    assert!(r.summary.fail > 0 && r.summary.pass > 0);
    assert_eq!(r.exit_code(), 1);
    cfg.jobs = 1;
    cfg.fail_fast = true;
    cfg.runs[0].n = Some("5..9".into());
    let r = run(&cfg).unwrap();
    assert_eq!(r.rows.len(), 1);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn cache_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.cache");
    let b = dir.path().join("b.cache");
    for p in [&a, &a, &b] {
        let out = bin().args(["cache", "--nmax", "60", "--path"]).arg(p).output().unwrap();
        assert!(out.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("qcongruence-cyclo-v1\n1: -1,1\n"));
    let mut cfg = config(&["THM1", "THM4"], "3..15", 2);
    let plain = stable(&run(&cfg).unwrap());
    cfg.cache = Some(a);
    assert_eq!(stable(&run(&cfg).unwrap()), plain);
    cfg.cache = Some(dir.path().join("missing"));
    assert!(run(&cfg).is_err());
}

#[test]
fn scan_tags_conjectures() {
    let out = bin().args(["scan", "--n", "3..5", "--primes", "7", "--format", "csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id,n,p,d,r,status"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|l| l.starts_with("CONJ3,")));
    assert!(rows.iter().any(|l| l.starts_with("ICONJ6,")));
    assert!(rows.iter().all(|l| l.ends_with("conjecture-evidence")), "{text}");
}

#[test]
fn padic_subcommand() {
    let out = bin().args(["padic", "--ids", "COR-16,HCASES", "--primes", "3,5,7,11", "--r", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("8 pass"), "{text}");
}

#[test]
fn desk_config_plans_and_passes() {
    let cfg: RunConfig = toml::from_str(DESK_CONFIG).unwrap();
    let jobs = plan(&cfg).unwrap();
    assert!(jobs.len() > 150);
    let r = run(&cfg).unwrap();
    assert!(r.summary.ok(), "{:?}", r.rows.iter().filter(|x| x.status != Status::Pass).collect::<Vec<_>>());
    let mut table = Vec::new();
    r.write(Format::Table, &mut table).unwrap();
    assert!(String::from_utf8(table).unwrap().contains("conjecture-evidence"));
}

#[test]
fn partial_options_take_defaults() {
    let cfg: RunConfig = toml::from_str("[options]\ninner_sum_start = 0\n\n[[run]]\nids = [\"THM6\"]\nn = \"5\"\n").unwrap();
    assert_eq!(cfg.options.inner_sum_start, 0);
    assert_eq!(cfg.options.conj5_q_multiplier, 1);
    assert_eq!(run(&cfg).unwrap().exit_code(), 1);
}

mod common;

use std::fs::File;
use std::process::Command;

use veritrans::pipeline::{
    offline_translator_from_gold, read_dataset, read_log_file, read_rows, replay, replay_log, run_all,
    sha256_hex, ArtifactLog, ColumnMap, LogStage, RunOptions, StageSummary, Status,
};
use veritrans::sat::Satisfiability;

use common::fixture;

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_veritrans"))
}

fn run_ok(cmd: &mut Command) -> String {
    let out = cmd.output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn offline_run_logs_every_stage_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let log_path = dir.path().join("artifacts.jsonl");
    let records = read_dataset(File::open(fixture("offline_dataset.csv")).unwrap(), &ColumnMap::new()).unwrap();
    let translator = offline_translator_from_gold(&records);
    let log = ArtifactLog::open(&log_path).unwrap();
    let rows = run_all(&records, &translator, &RunOptions::default(), Some(&log)).unwrap();
    drop(log);

    assert_eq!(rows.len(), records.len());
    assert_eq!(StageSummary::of(&rows).ok, rows.len());
    for (row, rec) in rows.iter().zip(&records) {
        assert_eq!(row.id, rec.id);
        assert_eq!(row.pred_from_script, rec.gold_label);
    }

    let entries = read_log_file(&log_path).unwrap();
    for stage in [LogStage::Stage1, LogStage::Stage2, LogStage::Stage3] {
        assert_eq!(entries.iter().filter(|e| e.stage == Some(stage)).count(), rows.len());
    }
    for e in entries.iter().filter(|e| e.stage == Some(LogStage::Stage1)) {
        assert_eq!(e.prompt_sha256.as_ref().unwrap().len(), 64);
        assert!(e.prompt_user.as_ref().unwrap().contains("Conditions:"));
    }
    for row in &rows {
        let logged = entries
            .iter()
            .find(|e| e.item_id == row.id && e.stage == Some(LogStage::Stage3))
            .unwrap();
        assert_eq!(logged.cnf_dimacs_sha256.as_deref(), Some(sha256_hex(row.cnf_dimacs.as_bytes()).as_str()));
        assert_eq!(replay(&row.generated_formula).unwrap(), row.cnf_dimacs.as_bytes());
    }
    let report = replay_log(&log_path).unwrap();
    assert_eq!((report.checked, report.mismatches.len()), (rows.len(), 0));
}

#[test]
fn cli_stages_compose_and_match_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    let dataset = fixture("offline_dataset.csv");

    run_ok(cli().args(["translate", "-i"]).arg(&dataset).arg("-o").arg(p("s1.csv")));
    run_ok(cli().args(["roundtrip", "-i"]).arg(p("s1.csv")).arg("-o").arg(p("s2.csv")));
    run_ok(cli().args(["solve", "-i"]).arg(p("s2.csv")).arg("-o").arg(p("s3.csv")));
    run_ok(cli().args(["pipeline", "-i"]).arg(&dataset).arg("-o").arg(p("all.csv")));

    let staged = std::fs::read(p("s3.csv")).unwrap();
    assert_eq!(staged, std::fs::read(p("all.csv")).unwrap());

    let rows = read_rows(staged.as_slice(), &ColumnMap::new()).unwrap();
    assert!(rows.iter().all(|r| r.status == Status::Ok && r.similarity.is_some()));

    let score: serde_json::Value =
        serde_json::from_str(&run_ok(cli().args(["score", "--json", "-i"]).arg(p("all.csv")))).unwrap();
    assert_eq!(score["overall"], 1.0);

    let sweep: serde_json::Value =
        serde_json::from_str(&run_ok(cli().args(["sweep", "--json", "-i"]).arg(p("all.csv")))).unwrap();
    let taus: Vec<f64> = sweep["similarity"].as_array().unwrap().iter().map(|p| p["tau"].as_f64().unwrap()).collect();
    assert_eq!(taus, [60.0, 65.0, 70.0, 75.0, 80.0, 85.0, 90.0, 95.0]);
    assert_eq!(sweep["full"].as_array().unwrap().len(), 8);

    let stats: serde_json::Value = serde_json::from_str(&run_ok(
        cli().args(["stats", "--json", "--taus", "75", "--resamples", "2000", "-i"]).arg(p("all.csv")),
    ))
    .unwrap();
    assert_eq!(stats["n"], rows.len());
    assert!(stats["ci95_low"].as_f64().unwrap() <= stats["ci95_high"].as_f64().unwrap());
}

#[test]
fn cli_sweep_on_hand_countable_fixture() {
    let out = run_ok(cli().args(["sweep", "--json", "--tau-min", "75", "--tau-max", "75", "-i"]).arg(fixture("sweep_four.csv")));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for gate in ["similarity", "full"] {
        assert_eq!(v[gate][0]["coverage"], 0.5);
        assert_eq!(v[gate][0]["accuracy"], 1.0);
        assert_eq!(v[gate][0]["accepted_count"], 2);
    }
}

#[test]
fn cli_compile_replay_and_frozen_log() {
    let a = run_ok(cli().args(["compile", "--formula", "(a -> b)"]));
    let b = run_ok(cli().args(["replay", "--formula", "(a -> b)"]));
    assert_eq!(a, b);
    assert!(a.starts_with("c 1 a\nc 2 b\n"));

    let out = run_ok(cli().args(["replay", "--log"]).arg(fixture("replay_log.jsonl")));
    assert!(out.ends_with("60 checked, 0 mismatches\n"), "{out}");

    let bad = cli().args(["replay", "--formula", "a &"]).output().unwrap();
    assert!(!bad.status.success());
}

#[test]
fn cli_replay_flags_tampered_log() {
    let dir = tempfile::tempdir().unwrap();
    let original = std::fs::read_to_string(fixture("replay_log.jsonl")).unwrap();
    let first_hash = original.split("\"cnf_dimacs_sha256\":\"").nth(1).unwrap()[..64].to_string();
    let tampered = original.replacen(&first_hash, &"0".repeat(64), 1);
    let path = dir.path().join("tampered.jsonl");
    std::fs::write(&path, tampered).unwrap();
    let out = cli().args(["replay", "--log"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("MISMATCH"));
}

#[test]
fn cli_solve_dimacs_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unsat.cnf");
    std::fs::write(&path, "p cnf 1 2\n1 0\n-1 0\n").unwrap();
    assert_eq!(run_ok(cli().arg("solve").arg("--dimacs").arg(&path)), "s UNSATISFIABLE\n");
    std::fs::write(&path, "c sample\np cnf 2 1\n-1 2 0\n").unwrap();
    assert!(run_ok(cli().arg("solve").arg("--dimacs").arg(&path)).starts_with("s SATISFIABLE\nv "));
}

#[test]
fn cli_config_columns_and_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    std::fs::write(
        &data,
        "item,requirement,label,formula\n1,\"a holds, and b holds\",sat,a & b\n2,a and not a,UNSAT,a & !a\n",
    )
    .unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        "workers = 2\n[columns]\nid = \"item\"\nconditions = \"requirement\"\ngold_label = \"label\"\ngold_formula = \"formula\"\n",
    )
    .unwrap();
    let out = dir.path().join("out.csv");
    run_ok(cli().arg("--config").arg(&config).args(["pipeline", "-i"]).arg(&data).arg("-o").arg(&out));
    let rows = read_rows(File::open(&out).unwrap(), &ColumnMap::new()).unwrap();
    assert_eq!(rows[0].pred_from_script, Some(Satisfiability::Sat));
    assert_eq!(rows[1].pred_from_script, Some(Satisfiability::Unsat));

    std::fs::write(&config, "temperature = 0.7\n").unwrap();
    let bad = cli().arg("--config").arg(&config).args(["pipeline", "-i"]).arg(&data).arg("-o").arg(&out).output().unwrap();
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("temperature"));
}

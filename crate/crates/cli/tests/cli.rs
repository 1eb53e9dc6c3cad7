use std::process::Command;

fn interwalk(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_interwalk")).args(args).output().unwrap()
}

#[test]
fn inline_flags_write_results_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ht.json");
    let status = interwalk(&["ht", "--generator", "complete", "--n", "4", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    let ht: f64 = std::fs::read_to_string(&out).unwrap().trim().parse().unwrap();
    assert!(ht > 0.0);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ht.json.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["spec"]["generator"]["kind"], "complete");
}

#[test]
fn failures_print_a_json_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    let o = interwalk(&["search-qpe", "--n", "8", "--r", "11", "--eps", "0.01", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let line = String::from_utf8(o.stderr).unwrap();
    let record: serde_json::Value = serde_json::from_str(line.lines().last().unwrap()).unwrap();
    assert_eq!(record["error"], "schedule_infeasible");
    assert_eq!(record["exit_code"], 3);
    assert!(!out.exists());

    let o = interwalk(&["gen", "--generator", "star", "--n", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mixed_batches_need_the_run_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let path = |f: &str| dir.path().join(f).display().to_string();
    let config = format!(
        r#"[{{"generator": {{"kind": "cycle", "n": 6}}, "algorithm": "ht", "output": {{"path": "{}"}}}},
            {{"generator": {{"kind": "metropolis-random", "n": 5, "seed": 2}}, "algorithm": "gen", "output": {{"path": "{}"}}}}]"#,
        path("ht.json"),
        path("gen.json")
    );
    std::fs::write(dir.path().join("batch.json"), config).unwrap();
    let batch = path("batch.json");
    assert_eq!(interwalk(&["ht", "--config", &batch]).status.code(), Some(2));
    assert!(interwalk(&["--jobs", "2", "run", &batch]).status.success());
    let generated: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path("gen.json")).unwrap()).unwrap();
    assert_eq!(generated["n"], 5);
    assert_eq!(generated["reversible"], true);
}

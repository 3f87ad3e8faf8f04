use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ks-channel")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn without_runtime(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("runtime_seconds");
    v
}

#[test]
fn mi_report_schema() {
    let out = run(&["mi", "--trials", "20000", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["config", "results", "runtime_seconds", "version"]);
    let r = &v["results"];
    assert!((r["exact_bits"].as_f64().unwrap() - 1.27865).abs() < 1e-5);
    assert!((r["conditional_entropy_bits"].as_f64().unwrap() - 2.37285).abs() < 1e-5);
    assert!((r["marginal_entropy_bits"].as_f64().unwrap() - 3.65149).abs() < 1e-5);
    assert_eq!(r["monte_carlo"]["n_samples"], 20000);
    assert_eq!(v["config"]["command"], "mi");
    assert_eq!(v["config"]["seed"], 3);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["simulate", "--bins", "3"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--state", "0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--meas", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["teleport"]).status.code(), Some(2));
    assert_eq!(run(&["mi", "--trials", "10"]).status.code(), Some(2));
    assert_eq!(run(&["cost", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_with_one() {
    // Two slices cannot resolve the 2z height profile, so Born conformance fails.
    let out = run(&["simulate", "--bins", "2", "--trials", "4000"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["results"]["checks"][0]["passed"], false);
}

#[test]
fn io_failure_exits_with_three() {
    let out = run(&["mi", "--trials", "2000", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_single_cell_with_explicit_vectors() {
    let out = run(&["verify", "--trials", "100000", "--state", "0,0,2", "--meas", "0.8,0,0.6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cells = v["results"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert!((cells[0]["born"].as_f64().unwrap() - 0.8).abs() < 1e-15);
    let emp = cells[0]["empirical"].as_f64().unwrap();
    assert!((emp - 0.8).abs() <= 3.0 * (0.16f64 / 100_000.0).sqrt());
    // explicit vectors are normalized on ingest
    assert_eq!(v["config"]["state"], serde_json::json!([0.0, 0.0, 1.0]));
}

#[test]
fn same_seed_same_report_any_worker_count() {
    for cmd in ["verify", "simulate", "mi", "cost"] {
        let trials = if cmd == "verify" || cmd == "mi" { "50000" } else { "3000" };
        let a = run(&[cmd, "--trials", trials, "--seed", "9", "--bins", "512", "--workers", "1"]);
        let b = run(&[cmd, "--trials", trials, "--seed", "9", "--bins", "512", "--workers", "3"]);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(without_runtime(json(&a)), without_runtime(json(&b)), "{cmd}");
    }
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sim.csv");
    // Enough trials for the built-in conformance check to pass.
    const N: usize = 100_000;
    let base = ["simulate", "--trials", "100000", "--seed", "4", "--bins", "1024"];
    let j = json(&run(&base));
    let mut args = base.to_vec();
    args.extend(["--format", "csv", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(run(&args).status.code(), Some(0));

    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5 * N);
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (bits_col, out_col) = (col("code_bits"), col("outcome"));

    let mean_bits = rows.iter().map(|r| r[bits_col].parse::<f64>().unwrap()).sum::<f64>() / rows.len() as f64;
    let json_mean = j["results"]["code_bits"]["mean"].as_f64().unwrap();
    assert!((mean_bits - json_mean).abs() < 1e-12);
    for (k, cell) in j["results"]["cells"].as_array().unwrap().iter().enumerate() {
        let chunk = &rows[k * N..(k + 1) * N];
        let plus = chunk.iter().filter(|r| &r[out_col] == "+").count() as f64 / N as f64;
        assert_eq!(plus, cell["empirical"].as_f64().unwrap());
    }

    // mi: one row per quantity, numbers printed in round-trip form
    let mi_path = dir.path().join("mi.csv");
    let mj = json(&run(&["mi", "--trials", "5000"]));
    run(&["mi", "--trials", "5000", "--format", "csv", "--out", mi_path.to_str().unwrap()]);
    let mut reader = csv::Reader::from_path(&mi_path).unwrap();
    for rec in reader.records().map(Result::unwrap) {
        let value: f64 = rec[1].parse().unwrap();
        let expected = if &rec[0] == "monte_carlo" {
            mj["results"]["monte_carlo"]["value"].as_f64().unwrap()
        } else {
            mj["results"][&rec[0]].as_f64().unwrap()
        };
        assert_eq!(value, expected);
    }
}

#[test]
fn cost_report_lists_reference_rows() {
    let out = run(&["cost", "--trials", "100000", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let bits: Vec<f64> =
        v["results"]["references"].as_array().unwrap().iter().map(|r| r["bits"].as_f64().unwrap()).collect();
    assert_eq!(&bits[1..], &[2.0, 1.85, 2.19]);
    let r = &v["results"];
    assert!(r["index_plugin_entropy_bits"].as_f64().unwrap() <= r["code_bits"]["mean"].as_f64().unwrap());
}

//! End-to-end runs of the `adsorb` binary.

use std::process::{Command, Output};

use adsorb_cli::record::{OutputRecord, Quantity, Source};

fn adsorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adsorb"))
        .args(args)
        .env_remove("ADSORB_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json_records(args: &[&str]) -> Vec<OutputRecord> {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = adsorb(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn density_exact_values() {
    let r = json_records(&["density", "--t", "1.0", "--source", "exact"]);
    assert_eq!(r.len(), 1);
    assert_eq!((r[0].quantity, r[0].source, r[0].s, r[0].stderr), (Quantity::Density, Source::Exact, None, None));
    assert!((r[0].value - 0.432_332_358_4).abs() < 1e-10);
    assert_eq!(json_records(&["density", "--t", "0"])[0].value, 0.0);
}

#[test]
fn density_oracle_within_truncation_bound() {
    let r = json_records(&["density", "--t", "0.3", "--source", "oracle", "--radius", "4"]);
    let exact = 0.5 * (1.0 - (-0.6f64).exp());
    assert_eq!(r[0].source, Source::Oracle);
    assert!((r[0].value - exact).abs() <= 4.1e-5);
}

#[test]
fn correlation_exact_values() {
    let r = json_records(&["correlation", "--t", "1.0", "--s-max", "2", "--source", "exact"]);
    let s: Vec<_> = r.iter().map(|x| x.s).collect();
    assert_eq!(s, [Some(0), Some(1), Some(2)]);
    assert!((r[1].value - -0.186_911_268_103_877_2).abs() < 1e-12);
    assert!((r[2].value - 0.110_085_807_041_203_76).abs() < 1e-12);
    assert!((r[1].value - -0.186_911_9).abs() < 1e-6);
    assert!((r[2].value - 0.110_086_2).abs() < 1e-6);
    for x in json_records(&["correlation", "--t", "0", "--s-max", "3"]) {
        assert_eq!(x.value, 0.0);
    }
}

#[test]
fn correlation_mc_agrees_with_exact() {
    let mc = json_records(&[
        "correlation", "--t", "0.5,1", "--source", "mc", "--sites", "1000000", "--replicas", "32", "--seed", "42",
    ]);
    let exact = json_records(&["correlation", "--t", "0.5,1"]);
    assert_eq!(mc.len(), exact.len());
    for (m, e) in mc.iter().zip(&exact) {
        assert_eq!((m.s, m.t), (e.s, e.t));
        let se = m.stderr.expect("mc rows carry a standard error");
        assert!((m.value - e.value).abs() <= 4.0 * se, "{m:?} vs {e:?}");
    }
}

#[test]
fn stderr_present_iff_mc() {
    for source in ["exact", "mc", "oracle"] {
        let r = json_records(&["sweep", "--t", "0.5", "--source", source, "--s-max", "2", "--radius", "2", "--sites", "10000", "--replicas", "4"]);
        assert!(!r.is_empty());
        for x in r {
            assert_eq!(x.stderr.is_some(), source == "mc");
        }
    }
}

#[test]
fn csv_schema() {
    let out = adsorb(&["gamma", "--t", "0:1:0.5", "--s-max", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("quantity,s,t,value,stderr,source"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        assert_eq!(row.len(), 6);
        assert_eq!((row[0], row[4], row[5]), ("gamma", "", "exact"));
        // 17 significant digits
        let mantissa = row[3].split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.len(), 18);
    }
    assert_eq!(rows[0][1], "2");
    assert_eq!(rows[5][1], "4");
    // t = 1, s = 2: gamma vanishes at jamming
    assert_eq!(rows[2][2].parse::<f64>().unwrap(), 1.0);
    assert!(rows[2][3].parse::<f64>().unwrap().abs() < 1e-15);
}

#[test]
fn csv_values_round_trip() {
    let out = adsorb(&["sweep", "--t", "0.1:1:0.3", "--s-max", "4"]);
    let json = json_records(&["sweep", "--t", "0.1:1:0.3", "--s-max", "4"]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let parsed: Vec<(String, String, f64, f64)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[1].to_string(), r[2].parse().unwrap(), r[3].parse().unwrap())
        })
        .collect();
    assert_eq!(parsed.len(), json.len());
    for (c, j) in parsed.iter().zip(&json) {
        assert_eq!(c.0, j.quantity.as_str());
        assert_eq!(c.1, j.s.map(|s| s.to_string()).unwrap_or_default());
        assert_eq!((c.2, c.3), (j.t, j.value));
    }
}

#[test]
fn json_round_trip_is_exact() {
    let r = json_records(&["sweep", "--t", "0.05:1:0.05", "--s-max", "6"]);
    let again: Vec<OutputRecord> = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn oracle_subcommand_pairs_with_exact() {
    let r = json_records(&["oracle", "--t", "0.4", "--s-max", "4", "--radius", "3"]);
    assert!(r.iter().any(|x| x.quantity == Quantity::PPair));
    for pair in r.chunks(2) {
        assert_eq!((pair[0].source, pair[1].source), (Source::Oracle, Source::Exact));
        assert_eq!((pair[0].quantity, pair[0].s), (pair[1].quantity, pair[1].s));
        assert!((pair[0].value - pair[1].value).abs() < 5e-3);
    }
}

#[test]
fn verify_quick_passes() {
    let start = std::time::Instant::now();
    let out = adsorb(&["verify", "--level", "quick"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(start.elapsed().as_secs() < 60);
    assert!(stdout(&out).contains("14 of 14 checks passed"));
}

#[test]
fn verify_full_passes() {
    let out = adsorb(&["verify", "--level", "full", "--seed", "42"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("mc-partition"));
}

#[test]
fn verify_names_a_corrupted_identity() {
    let out = adsorb(&["verify", "--corrupt", "gamma-assembly"]);
    assert_eq!(code(&out), 1);
    let table = stdout(&out);
    let failing: Vec<_> = table.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].contains("gamma-assembly"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma-assembly"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&adsorb(&["density", "--bogus"])), 2);
    assert_eq!(code(&adsorb(&["density", "--t", "1.5"])), 2);
    assert_eq!(code(&adsorb(&["density", "--t", "a,b"])), 2);
    assert_eq!(code(&adsorb(&["gamma", "--s-max", "1"])), 2);
    assert_eq!(code(&adsorb(&["density", "--source", "mc", "--replicas", "1", "--sites", "100"])), 2);
    assert_eq!(code(&adsorb(&["verify", "--corrupt", "no-such-check"])), 2);
    assert_eq!(code(&adsorb(&["density", "--source", "mc", "--sites", "100000000000"])), 3);
    assert_eq!(code(&adsorb(&["density", "--source", "mc", "--budget", "1000", "--sites", "100"])), 3);
    assert_eq!(code(&adsorb(&["density", "--source", "oracle", "--radius", "5"])), 3);
    assert_eq!(code(&adsorb(&["--help"])), 0);
}

#[test]
fn out_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    let out = dir.path().join("rho.csv");
    std::fs::write(&config, r#"{"t": "0.2:0.6:0.2", "source": "exact", "format": "json", "seed": 1}"#).unwrap();
    let cfg = config.to_str().unwrap();
    let res = adsorb(&["density", "--config", cfg, "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    assert!(res.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    // grid from the config, format from the flag
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("quantity,"));

    std::fs::write(&config, r#"{"no-such-flag": 1}"#).unwrap();
    assert_eq!(code(&adsorb(&["density", "--config", cfg])), 2);
    assert_eq!(code(&adsorb(&["density", "--config", "/nonexistent/cfg.json"])), 2);
}

#[test]
fn thread_override_does_not_change_results() {
    let args = ["density", "--t", "0.5,1", "--source", "mc", "--sites", "20000", "--replicas", "6", "--format", "json"];
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_adsorb"))
            .args(args)
            .env("ADSORB_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        out.stdout
    };
    assert_eq!(run("1"), run("3"));
    let bad = Command::new(env!("CARGO_BIN_EXE_adsorb")).args(args).env("ADSORB_THREADS", "0").output().unwrap();
    assert_eq!(code(&bad), 2);
}

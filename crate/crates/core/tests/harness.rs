use std::collections::HashMap;
use std::fs;
use std::io::Write;

use ordercheck::gen::{encode_digraph6, generate_all};
use ordercheck::harness::{
    exit_code, sweep, verify_poset, Checkpoint, CheckpointConfig, HarnessError, Source, SweepConfig, SweepSummary,
    VerificationRecord,
};

fn run(config: &SweepConfig) -> (SweepSummary, Vec<u8>) {
    let mut out = Vec::new();
    let summary = sweep(config, &mut out).unwrap();
    (summary, out)
}

fn records(bytes: &[u8]) -> Vec<VerificationRecord> {
    std::str::from_utf8(bytes).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn small_sweeps_have_no_counterexamples() {
    for (p, total) in [(1, 1), (2, 2), (3, 5), (6, 318)] {
        let (summary, out) = run(&SweepConfig::generate(p));
        assert_eq!(summary.total_posets, total);
        assert!(summary.complete);
        assert_eq!(summary.counterexample_total(), 0);
        assert_eq!(summary.exit_code(), exit_code::PASS);
        let recs = records(&out);
        assert_eq!(recs.len() as u64, total);
        for r in &recs {
            r.check_invariants().unwrap();
        }
    }
}

#[test]
fn sweeps_are_deterministic() {
    let (a, out_a) = run(&SweepConfig::generate(6));
    let (b, out_b) = run(&SweepConfig { jobs: 3, ..SweepConfig::generate(6) });
    assert_eq!(out_a, out_b);
    assert!(a.same_result(&b));
}

#[test]
fn shards_merge_to_the_unsharded_stream() {
    for p in 1..=6 {
        let (_, whole) = run(&SweepConfig::generate(p));
        let mut expected: HashMap<String, usize> = HashMap::new();
        for line in std::str::from_utf8(&whole).unwrap().lines() {
            *expected.entry(line.to_owned()).or_default() += 1;
        }
        for k in 1..=8 {
            let mut merged: HashMap<String, usize> = HashMap::new();
            for i in 0..k {
                let (s, out) = run(&SweepConfig { shards: k, shard: i, ..SweepConfig::generate(p) });
                assert_eq!(s.expected_total, if k == 1 { Some(s.total_posets) } else { None });
                for line in std::str::from_utf8(&out).unwrap().lines() {
                    *merged.entry(line.to_owned()).or_default() += 1;
                }
            }
            assert_eq!(merged, expected, "p = {p}, k = {k}");
        }
    }
}

#[test]
fn interrupted_sweep_resumes_to_the_same_result() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("p7.ckpt");
    let output = dir.path().join("p7.jsonl");
    let base = SweepConfig { checkpoint: Some(ck.clone()), output: Some(output.clone()), jobs: 2, ..SweepConfig::generate(7) };

    let first = sweep(&SweepConfig { max_units: Some(160), ..base.clone() }, &mut std::io::sink()).unwrap();
    assert!(!first.complete);
    let units_total = first.units_total.unwrap();
    assert!(first.units_completed * 3 >= units_total && first.units_completed * 3 <= units_total * 2);
    assert!(first.total_posets > 0 && first.total_posets < 2045);

    // Leftover bytes past the checkpointed offset are discarded on resume.
    fs::OpenOptions::new().append(true).open(&output).unwrap().write_all(b"{\"partial").unwrap();

    let resumed = sweep(&base, &mut std::io::sink()).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.total_posets, 2045);

    let (fresh, fresh_out) = run(&SweepConfig::generate(7));
    assert!(resumed.same_result(&SweepSummary { units_total: Some(units_total), ..fresh.clone() }));
    assert_eq!(fs::read(&output).unwrap(), fresh_out);

    // Completed: summary is reprinted, nothing is recomputed.
    let again = sweep(&base, &mut std::io::sink()).unwrap();
    assert_eq!(again, resumed);
}

#[test]
fn resume_with_changed_configuration_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ckpt");
    let config = SweepConfig { checkpoint: Some(ck.clone()), shards: 2, max_units: Some(3), ..SweepConfig::generate(6) };
    sweep(&config, &mut std::io::sink()).unwrap();
    let changed = SweepConfig { shards: 3, ..config.clone() };
    assert!(matches!(sweep(&changed, &mut std::io::sink()), Err(HarnessError::ConfigMismatch { .. })));
    let other_p = SweepConfig { source: Source::Generate { p: 5 }, ..config };
    let err = sweep(&other_p, &mut std::io::sink()).unwrap_err();
    assert!(matches!(err, HarnessError::ConfigMismatch { .. }));
    assert_eq!(err.exit_code(), exit_code::USAGE_OR_IO);
}

#[test]
fn corrupt_checkpoints_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ckpt");
    let config = SweepConfig { checkpoint: Some(ck.clone()), max_units: Some(2), ..SweepConfig::generate(6) };
    sweep(&config, &mut std::io::sink()).unwrap();

    let text = fs::read_to_string(&ck).unwrap();
    let mut stored: Checkpoint = serde_json::from_str(&text).unwrap();
    stored.units_completed += 1;
    fs::write(&ck, serde_json::to_string(&stored).unwrap()).unwrap();
    assert!(matches!(sweep(&config, &mut std::io::sink()), Err(HarnessError::CheckpointCorrupt(_))));

    fs::write(&ck, "not json").unwrap();
    assert!(matches!(sweep(&config, &mut std::io::sink()), Err(HarnessError::CheckpointCorrupt(_))));

    let cfg: CheckpointConfig = serde_json::from_str::<Checkpoint>(&text).unwrap().config;
    let mut tampered: serde_json::Value = serde_json::from_str(&text).unwrap();
    tampered["config_hash"] = serde_json::Value::String("00".repeat(32));
    fs::write(&ck, tampered.to_string()).unwrap();
    assert!(matches!(Checkpoint::load(&ck, &cfg), Err(HarnessError::CheckpointCorrupt(_))));
}

#[test]
fn digraph6_source_is_verified_in_file_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p5.d6");
    let mut text = String::new();
    let posets: Vec<_> = generate_all(5, None).unwrap().collect();
    for q in &posets {
        text.push_str(&encode_digraph6(q));
        text.push('\n');
    }
    fs::write(&path, text).unwrap();
    let (summary, out) = run(&SweepConfig::digraph6(&path));
    assert_eq!(summary.total_posets, 63);
    assert_eq!(summary.expected_total, None);
    assert!(summary.complete);
    let recs = records(&out);
    let direct: Vec<_> = posets.iter().map(|q| verify_poset(q).unwrap()).collect();
    assert_eq!(recs, direct);

    let (a, _) = run(&SweepConfig { shards: 2, shard: 0, ..SweepConfig::digraph6(&path) });
    let (b, _) = run(&SweepConfig { shards: 2, shard: 1, ..SweepConfig::digraph6(&path) });
    assert_eq!(a.total_posets + b.total_posets, 63);
}

#[test]
fn bad_digraph6_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.d6");
    fs::write(&path, "&AO\n&AW\n").unwrap();
    let err = sweep(&SweepConfig::digraph6(&path), &mut std::io::sink()).unwrap_err();
    assert!(matches!(err, HarnessError::Read(_)));
    assert_eq!(err.exit_code(), exit_code::USAGE_OR_IO);
    let missing = sweep(&SweepConfig::digraph6(dir.path().join("missing")), &mut std::io::sink()).unwrap_err();
    assert_eq!(missing.exit_code(), exit_code::USAGE_OR_IO);
}

#[test]
fn summary_only_suppresses_records() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("out.jsonl");
    let config = SweepConfig { summary_only: true, output: Some(output.clone()), ..SweepConfig::generate(5) };
    let (summary, out) = run(&config);
    assert_eq!(summary.total_posets, 63);
    assert!(out.is_empty());
    assert_eq!(fs::read(&output).unwrap(), b"");
}

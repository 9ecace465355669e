//! The twelve acceptance criteria, one line each on stderr.

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use cherednik::selftest::{run_criterion, CRITERIA};
use cherednik_cli::output::strip_timing;
use cherednik_cli::REPRODUCIBILITY_RUNS;

fn line(text: &str) {
    let _ = std::io::stderr().write_all(format!("{text}\n").as_bytes());
}

/// Each command runs cold, then twice warm, through the built binary.
fn reproducibility(cache: &std::path::Path) -> Vec<String> {
    let mut failures = Vec::new();
    for args in REPRODUCIBILITY_RUNS {
        let mut outputs = Vec::new();
        for _ in 0..3 {
            let out = Command::new(env!("CARGO_BIN_EXE_cherednik"))
                .arg("--cache-dir")
                .arg(cache)
                .args(args)
                .output()
                .expect("binary runs");
            if !out.status.success() {
                failures.push(format!("{} exited with {}", args.join(" "), out.status));
            }
            outputs.push(strip_timing(&String::from_utf8_lossy(&out.stdout)));
        }
        if outputs[0] != outputs[1] || outputs[1] != outputs[2] {
            failures.push(format!("{} differs between runs", args.join(" ")));
        }
    }
    failures
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=11 {
        let start = Instant::now();
        let report = run_criterion(id).expect("criterion runs");
        let failures: Vec<String> = report
            .failures()
            .map(|c| format!("{}: {}", c.name, c.witnesses.first().cloned().unwrap_or_default()))
            .collect();
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        line(&format!(
            "{status} criterion {id:>2} ({} checks, {:.1}s): {}",
            report.checks.len(),
            start.elapsed().as_secs_f64(),
            CRITERIA[id - 1]
        ));
        for f in &failures {
            line(&format!("       {f}"));
        }
        if !failures.is_empty() {
            failed.push(id);
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let failures = reproducibility(dir.path());
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    line(&format!("{status} criterion 12 ({:.1}s): {}", start.elapsed().as_secs_f64(), CRITERIA[11]));
    for f in &failures {
        line(&format!("       {f}"));
    }
    if !failures.is_empty() {
        failed.push(12);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

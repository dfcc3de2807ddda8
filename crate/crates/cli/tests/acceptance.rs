//! Runs the full acceptance suite through the binary (`verify --suite all
//! --seed 42`, plus `--timings`) and prints one line per criterion.

use std::io::Write;
use std::process::Command;
use std::time::Instant;

#[test]
fn acceptance() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_canolift"))
        .args(["verify", "--suite", "all", "--seed", "42", "--timings"])
        .output()
        .expect("binary runs");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("verify prints JSON");
    let results = report["results"].as_array().expect("results array");

    // straight to the stderr handle: libtest only captures the print macros,
    // and these lines should show up in a plain `cargo test`
    let mut err = std::io::stderr().lock();
    writeln!(err).ok();
    for r in results {
        writeln!(
            err,
            "criterion {}: {} [{}] {} ms: {}",
            r["id"],
            if r["pass"] == true { "PASS" } else { "FAIL" },
            r["name"].as_str().unwrap_or(""),
            r["elapsed_ms"],
            r["detail"].as_str().unwrap_or(""),
        )
        .ok();
    }
    writeln!(err, "suite wall time {:.1} s", start.elapsed().as_secs_f64()).ok();

    let ids: Vec<u64> = results.iter().filter_map(|r| r["id"].as_u64()).collect();
    assert_eq!(ids, (1..=9).collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(0), "some criterion failed");
    assert_eq!(report["pass"], true);
}

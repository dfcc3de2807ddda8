use std::process::{Command, Output};

fn canolift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canolift")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn schutz_example() {
    let out = canolift(&["schutz", "--type", "A", "--rank", "2", "--lambda", "1,0", "--word", "1,2,1", "--t", "1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"t_out":[0,0,1]}"#);
}

#[test]
fn star_example() {
    let out = canolift(&["star", "--type", "A", "--rank", "3", "--i", "1"]);
    assert_eq!(stdout(&out).trim(), r#"{"star":3}"#);
    let out = canolift(&["star", "--rank", "2", "--word", "1,2,1"]);
    assert_eq!(stdout(&out).trim(), r#"{"star_word":[2,1,2]}"#);
}

#[test]
fn phi_reads_json_input() {
    let dir = std::env::temp_dir().join(format!("canolift-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    std::fs::write(&input, r#"{"word":[1,2,1],"t":[0,1,1],"lambda":[1,0]}"#).unwrap();
    let out = canolift(&["phi", "--rank", "2", "--input", input.to_str().unwrap(), "--to", "2,1,2"]);
    assert_eq!(stdout(&out).trim(), r#"{"word_out":[2,1,2],"t_out":[0,0,0]}"#);
    // same word in and out: the A2 table
    let out = canolift(&["phi", "--rank", "2", "--input", input.to_str().unwrap(), "--t", "1,0,0"]);
    assert_eq!(stdout(&out).trim(), r#"{"word_out":[1,2,1],"t_out":[0,0,1]}"#);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn transitions_both_sides() {
    let out = canolift(&["transition", "--rank", "2", "--from", "1,2,1", "--to", "2,1,2", "--t", "1,0,0"]);
    assert_eq!(stdout(&out).trim(), r#"{"word_out":[2,1,2],"t_out":[0,0,1]}"#);
    let out = canolift(&["transition", "--rank", "2", "--side", "string", "--from", "1,2,1", "--to", "2,1,2", "--t", "1,0,0"]);
    assert_eq!(stdout(&out).trim(), r#"{"word_out":[2,1,2],"t_out":[0,1,0]}"#);
    let out = canolift(&["transition", "--rank", "2", "--from", "1,2,1", "--to", "2,1,2", "--pl"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pl"]["components"].as_array().unwrap().len(), 3);
}

#[test]
fn words_and_paths() {
    let out = canolift(&["words", "--rank", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 16);
    let out = canolift(&["words", "--type", "B", "--rank", "2", "--from", "1,2,1,2", "--to", "2,1,2,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["path"].as_array().unwrap().len(), 1);
    assert_eq!(v["words"][1], serde_json::json!([2, 1, 2, 1]));
}

#[test]
fn anchor_zeta_and_dot() {
    let out = canolift(&["anchor", "--rank", "2", "--lambda", "1,0", "--word", "1,2,1"]);
    assert_eq!(stdout(&out).trim(), r#"{"anchor":[1,0,1]}"#);
    let out = canolift(&["zeta-check", "--rank", "2", "--word", "1,2,1", "--t", "2/9,3/2,1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["reports"][0]["t_prime"], serde_json::json!(["243/4", "2/9", "3"]));
    let out = canolift(&["crystal-dot", "--rank", "2", "--lambda", "1,1"]);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph"));
    // each sl2 restriction of the adjoint crystal is 3 + 2 + 2 + 1: four
    // strings, so 8 - 4 edges per color
    assert_eq!(dot.matches("->").count(), 2 * (8 - 4));
}

#[test]
fn corollary_table() {
    let out = canolift(&["corollary", "--rank", "1", "--lambda", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    let pairs: Vec<(i64, i64)> = v["report"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["t"][0].as_i64().unwrap(), r["t_prime"][0].as_i64().unwrap()))
        .collect();
    assert_eq!(pairs.len(), 4);
    assert!(pairs.iter().all(|&(t, tp)| t + tp == 3));
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("canolift-out-{}.json", std::process::id()));
    let out = canolift(&["star", "--rank", "4", "--i", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), r#"{"star":3}"#);
    std::fs::remove_file(path).ok();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["star", "--rank", "2", "--i", "5"],
        &["transition", "--rank", "2", "--from", "1,2,1", "--to", "2,1,2"],
        &["schutz", "--rank", "2", "--lambda", "1,0", "--word", "1,2", "--t", "0,0"],
        &["anchor", "--type", "B", "--rank", "2", "--lambda", "1,0", "--word", "1,2,1,2"],
        &["anchor", "--rank", "2", "--lambda", "-1,0", "--word", "1,2,1"],
        &["zeta-check", "--rank", "2", "--word", "1,2,1", "--t", "1,-1,2"],
        &["verify", "--suite", "12"],
    ] {
        let out = canolift(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_is_deterministic() {
    let run = || canolift(&["verify", "--suite", "1,2,4,8", "--seed", "7", "--samples", "100"]);
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
}

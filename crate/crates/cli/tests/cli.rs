use std::fs;
use std::process::{Command, Output};

fn hss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hss")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn goppa_table_csv_parses() {
    let o = hss(&["table", "goppa", "--dt", "4", "--servers", "64,128,256,512,1024,2048"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["s", "baseline_rate", "baseline_amort", "ours_rate", "ours_amort", "pct_rate", "pct_amort"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(&rows[0].iter().take(5).collect::<Vec<_>>(), &["64", "0.93", "360", "0.65", "42"]);
    assert_eq!(&rows[5].iter().take(5).collect::<Vec<_>>(), &["2048", "0.99", "22484", "0.99", "2026"]);
}

#[test]
fn demo_goppa_is_all_correct() {
    let o = hss(&["demo", "--code", "goppa", "--u", "3", "--r", "1", "--t", "1", "--d", "1", "--trials", "200", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("200/200 correct"));
}

#[test]
fn oversized_hermitian_dimension_is_a_usage_error() {
    let o = hss(&["demo", "--code", "hermitian", "--q", "2", "--k", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parameter out of range"));
}

#[test]
fn bad_flag_is_a_usage_error() {
    assert_eq!(hss(&["table", "goppa", "--bogus"]).status.code(), Some(2));
    assert_eq!(hss(&["audit-privacy", "--s", "2", "--t", "2"]).status.code(), Some(2));
}

#[test]
fn insufficient_labelweight_is_rejected() {
    let o = hss(&["demo", "--code", "rs", "--q", "5", "--k", "4", "--t", "1", "--d", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["simulate", "--code", "hermitian", "--d", "2", "--seed", "11", "--shuffle"];
    let a = hss(&args);
    let b = hss(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let gv = ["gv-sim", "--trials", "100", "--seed", "4", "--format", "csv"];
    assert_eq!(hss(&gv).stdout, hss(&gv).stdout);
}

#[test]
fn transcript_replay_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    let p = path.to_str().unwrap();
    let o = hss(&["simulate", "--code", "rs", "--d", "2", "--seed", "2", "--dump-transcript", p]);
    assert_eq!(o.status.code(), Some(0));
    let ok = hss(&["simulate", "--code", "rs", "--d", "2", "--replay", p]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("mismatched_servers: none"));

    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // frames 1..=5 carry input shares; the last is the result, before it the output shares
    let victim = lines.len() - 2;
    let last = lines[victim].pop().unwrap();
    lines[victim].push(if last == '0' { '1' } else { '0' });
    fs::write(&path, lines.join("\n")).unwrap();
    let bad = hss(&["simulate", "--code", "rs", "--d", "2", "--replay", p]);
    assert_eq!(bad.status.code(), Some(1));

    fs::write(&path, "labelweight-hss-transcript/v1\n02\n").unwrap();
    assert_eq!(hss(&["simulate", "--code", "rs", "--d", "2", "--replay", p]).status.code(), Some(1));
}

#[test]
fn code_files_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    let p = path.to_str().unwrap();
    let o = hss(&["code", "build", "--code", "hermitian", "--q", "2", "--k", "5", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&path).unwrap().starts_with("labelweight-code/v1\n"));
    let lw = hss(&["code", "labelweight", "--input", p]);
    assert!(stdout(&lw).contains("labelweight: 3"));
    let demo = hss(&["demo", "--input", p, "--d", "2", "--trials", "20"]);
    assert_eq!(demo.status.code(), Some(0));
    assert!(stdout(&demo).contains("20/20 correct"));
}

#[test]
fn privacy_and_gv_reports() {
    let o = hss(&["audit-privacy", "--s", "4", "--t", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("private: true"));
    let o = hss(&["gv-sim", "--trials", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("passed: true"));
    let o = hss(&["gv-sim", "--eps", "0.9"]);
    assert_eq!(o.status.code(), Some(2));
}

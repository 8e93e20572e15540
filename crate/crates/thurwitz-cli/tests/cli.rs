use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thurwitz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const POLY: &[&str] = &["poly", "--ell-mu", "2", "--ell-nu", "2", "--p", "2", "--q", "0", "--r", "0", "--chamber-sample", "3,1:2,2"];

#[test]
fn oracle_counts() {
    let o = run(&["oracle", "--mu", "2,2", "--nu", "4", "--g", "1", "--p", "3", "--q", "0", "--r", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "type (1,(2,2),(4),3,0,0)\nM = 50\nH = 25/2\n");
}

#[test]
fn chamber_polynomial() {
    let o = run(POLY);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "m = M1^2*M2 + M1*M2\nh = M1 + 1\n");
    let mut strict = POLY.to_vec();
    strict[6] = "0";
    strict[8] = "2";
    assert_eq!(stdout(&run(&strict)), "m = M1^2*M2 - M1*M2\nh = M1 - 1\n");
}

#[test]
fn progress_goes_to_stderr() {
    let o = run(POLY);
    assert!(!o.stderr.is_empty());
    assert!(!stdout(&o).contains("summing"));
}

#[test]
fn genus_value_and_wallcross() {
    let o = run(&["genus", "--g", "1", "--mu", "2,2", "--nu", "4", "--p", "3", "--q", "0", "--r", "0"]);
    assert_eq!(stdout(&o), "type (1,(2,2),(4),3,0,0)\nM = 50\nH = 25/2\n");
    let o = run(&[
        "wallcross", "--p", "2", "--q", "0", "--r", "0", "--chamber-sample", "3,1:2,2", "--chamber-sample", "2,2:3,1",
    ]);
    assert_eq!(stdout(&o), "wall M1 - N1\nwc = M1^2*M2 - M1*M2*N1\n");
}

#[test]
fn graphs_in_a_chamber() {
    let o = run(&["graphs", "--ell-mu", "2", "--ell-nu", "2", "--p", "2", "--q", "0", "--r", "0", "--chamber-sample", "3,1:2,2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["graphs"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--max-d", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["suites"].as_array().unwrap().iter().all(|s| s["pass"] == true));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["poly", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--mu", "2,2", "--nu", "4", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--mu", "2,x", "--nu", "4", "--p", "3", "--q", "0", "--r", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--mu", "2,2"]).status.code(), Some(2));
    let mut on_wall = POLY.to_vec();
    on_wall[12] = "2,2:2,2";
    assert_eq!(run(&on_wall).status.code(), Some(3));
    let o = run(&["oracle", "--mu", "2,2", "--nu", "4", "--g", "1", "--p", "3", "--q", "0", "--r", "0", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(o.stdout.is_empty());
    let o = run(&[
        "wallcross", "--p", "2", "--q", "0", "--r", "0", "--chamber-sample", "3,1:2,2", "--chamber-sample", "1,3:2,2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_byte_identical() {
    let args = ["poly", "--ell-mu", "3", "--ell-nu", "2", "--p", "2", "--q", "0", "--r", "1", "--chamber-sample", "3,3,1:2,5", "--json"];
    let a = run(&args).stdout;
    let mut one = args.to_vec();
    one.extend(["--threads", "1"]);
    let mut four = args.to_vec();
    four.extend(["--threads", "4"]);
    assert_eq!(a, run(&one).stdout);
    assert_eq!(a, run(&four).stdout);
    let v = run(&["verify", "--max-d", "3", "--json", "--threads", "1"]).stdout;
    assert_eq!(v, run(&["verify", "--max-d", "3", "--json", "--threads", "3"]).stdout);
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("thurwitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poly.json");
    let mut args = POLY.to_vec();
    let p = path.to_str().unwrap();
    args.extend(["--json", "--out", p]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    let mut direct = POLY.to_vec();
    direct.push("--json");
    assert_eq!(written, run(&direct).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

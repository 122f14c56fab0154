use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lcd-eaqecc"));
    c.env_remove("LCD_EAQECC_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct_to(path: &Path, args: &[&str]) -> Value {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--output", path.to_str().unwrap()]);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn verify(path: &Path) -> (i32, String) {
    let o = run(&["verify", path.to_str().unwrap()]);
    (o.status.code().unwrap(), stdout(&o))
}

#[test]
fn construct_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], [u64; 4]); 3] = [
        (&["--family", "iii", "--p", "5", "--e", "2", "--k", "1", "--l", "4", "--case", "1"], [8, 4, 5, 4]),
        (&["--family", "ii", "--p", "7", "--e", "3", "--k", "1", "--r", "3", "--d", "5"], [114, 110, 5, 4]),
        (&["--family", "i", "--p", "5", "--e", "2", "--k", "1", "--n", "26", "--l", "3"], [26, 3, 24, 23]),
    ];
    for (i, (args, params)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("c{i}.json"));
        let v = construct_to(&path, args);
        let got: Vec<u64> = v["params"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        assert_eq!(got, params.to_vec());
        let (code, out) = verify(&path);
        assert_eq!(code, 0, "{out}");
        assert!(!out.contains("FAIL"));
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["construct", "--family", "iv", "--p", "13", "--e", "2", "--l", "2"]);
    let b = run(&["construct", "--family", "iv", "--p", "13", "--e", "2", "--l", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tampered_certificates_fail() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let base = construct_to(&path, &["--family", "iii", "--p", "5", "--e", "2", "--k", "1", "--l", "4", "--case", "2"]);
    let mutate = |f: &dyn Fn(&mut Value), expect: &str| {
        let mut v = base.clone();
        f(&mut v);
        let p = dir.path().join("m.json");
        std::fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
        let (code, out) = verify(&p);
        assert_eq!(code, 1, "{out}");
        assert!(out.lines().any(|l| l.starts_with("FAIL") && l.contains(expect)), "{out}");
    };
    mutate(&|v| v["params"][2] = (v["params"][2].as_u64().unwrap() + 1).into(), "distance");
    mutate(&|v| v["params"][3] = (v["params"][3].as_u64().unwrap() - 1).into(), "ebits");
    mutate(&|v| v["source"]["code"]["G"][1][4] = serde_json::json!([3, 3]), "provenance");
}

#[test]
fn malformed_and_precondition_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"params\": [1, 2]}").unwrap();
    assert_eq!(verify(&path).0, 2);
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(verify(&path).0, 2);
    let o = run(&["construct", "--family", "iii", "--p", "5", "--e", "2", "--k", "1", "--l", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p^k + 1"));
    let o = run(&["construct", "--family", "i", "--p", "5", "--e", "2", "--k", "1", "--n", "26", "--l", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["construct", "--family", "i", "--p", "5", "--e", "2", "--k", "1", "--n", "26", "--l", "4", "--beyond-bound", "--search-budget", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn scan_family_ii() {
    let o = run(&["scan", "--family", "ii", "--p", "7", "--e", "3", "--k", "1", "--r", "3,6", "--d", "2..10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,p,e,k,q,n,kq,d,c,mds,maxent,dist_method,seconds"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 18);
    assert!(rows[0].starts_with("ii,7,3,1,343,114,113,2,1,true,true,bch-singleton,"));
    assert!(rows[17].starts_with("ii,7,3,1,343,57,48,10,9,"));
}

#[test]
fn scan_family_iv_and_empty_ranges() {
    let o = run(&["scan", "--family", "iv", "--p", "11,13", "--e", "2", "--l", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5, "{text}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("skip"));
    let o = run(&["scan", "--family", "ii", "--p", "7", "--e", "3", "--k", "1", "--r", "3", "--d", "5..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn reproduce_small_ids() {
    for id in ["thB-q25", "thA-q343-r6", "cor35-p13", "cor35-p11"] {
        let o = run(&["reproduce", id]);
        let text = stdout(&o);
        assert_eq!(o.status.code(), Some(0), "{text}");
        assert!(!text.contains("FAIL"));
    }
    assert_eq!(run(&["reproduce", "nope"]).status.code(), Some(2));
}

#[test]
fn dual_side_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("both.json");
    let v = construct_to(&path, &["--family", "i", "--p", "5", "--e", "2", "--k", "1", "--n", "26", "--l", "2", "--dual"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["params"], serde_json::json!([26, 24, 3, 2]));
    assert_eq!(v[1]["distance_certificate"]["method"], "mds-structural");
    let (code, out) = verify(&path);
    assert_eq!(code, 0, "{out}");
}

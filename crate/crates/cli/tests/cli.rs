use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

const D4_VIOLATING: &str =
    r#"{"weights":[2,2,2],"mu":{"1":["9/10","1/10"],"2":["1/10","9/10"],"3":["1/2","1/2"]},"z":{"re":"0","im":"1"}}"#;
const E6_UNIFORM: &str =
    r#"{"weights":[2,3,3],"mu":{"1":["1/2","1/2"],"2":["1/3","1/3","1/3"],"3":["1/3","1/3","1/3"]},"z":{"re":"0","im":"1"}}"#;
const D6_UNIFORM: &str =
    r#"{"weights":[2,2,4],"mu":{"1":["1/2","1/2"],"2":["1/2","1/2"],"3":["1/4","1/4","1/4","1/4"]},"z":{"re":"0","im":"1"}}"#;

fn toss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toss")).args(args).output().expect("binary runs")
}

fn file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_exit_codes() {
    let ok = toss(&["check", file("e6.json", E6_UNIFORM).to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["member"], true);

    let bad = toss(&["check", file("d4.json", D4_VIOLATING).to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert!(v["violations"].as_array().unwrap().iter().any(|x| x["id"] == "D4.L2.j=1.sign=+"));

    let broken = D6_UNIFORM.replace(r#""1":["1/2","1/2"]"#, r#""1":["1/2","2/5"]"#);
    let err = toss(&["check", file("sum.json", &broken).to_str().unwrap()]);
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&err.stderr).contains("branch 1"));
}

#[test]
fn oracle_periods() {
    let d6 = file("d6.json", D6_UNIFORM);
    let pass = toss(&["oracle", d6.to_str().unwrap(), "--periods", "2"]);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(json(&pass)["window"], serde_json::json!([0, 8]));

    let fail = toss(&["oracle", file("d4o.json", D4_VIOLATING).to_str().unwrap()]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(json(&fail)["violations"][0]["id"].as_str().unwrap().contains('@'));

    assert_eq!(toss(&["oracle", d6.to_str().unwrap(), "--periods", "0"]).status.code(), Some(2));
}

#[test]
fn derive_types() {
    let d6 = toss(&["derive", "--type", "D6"]);
    assert_eq!(d6.status.code(), Some(0));
    assert_eq!(json(&d6)["equivalent"], true);

    let a = json(&toss(&["derive", "--type", "A32"]));
    assert_eq!(a["derived"], serde_json::json!([]));
    assert_eq!(a["equivalent"], true);

    assert_eq!(toss(&["derive", "--type", "F4"]).status.code(), Some(2));
}

#[test]
fn flow_between_members() {
    let a = file("fa.json", E6_UNIFORM);
    let b = file("fb.json", &E6_UNIFORM.replace(r#""re":"0","im":"1""#, r#""re":"-13/7","im":"0""#));
    let out = toss(&["flow", a.to_str().unwrap(), b.to_str().unwrap(), "--steps", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["steps"].as_array().unwrap().len(), 11);
    assert_eq!(v["steps"][10]["t"], "1/1");

    let endpoints = json(&toss(&["flow", a.to_str().unwrap(), b.to_str().unwrap(), "--steps", "1"]));
    assert_eq!(endpoints["steps"].as_array().unwrap().len(), 2);

    let reversed = toss(&["flow", b.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(reversed.status.code(), Some(2));
}

#[test]
fn heart_kinds() {
    let upper = json(&toss(&["heart", file("h.json", E6_UNIFORM).to_str().unwrap()]));
    assert_eq!(upper["kind"], "NonConcentrated");
    let real = D6_UNIFORM.replace(r#""re":"0","im":"1""#, r#""re":"-51/10","im":"0""#);
    let out = toss(&["heart", file("hr.json", &real).to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["kind"], "Concentrated");
    assert_eq!(v["quiver"]["arrows"].as_array().unwrap().len(), 6);
}

#[test]
fn sampling_is_deterministic_and_parses() {
    let first = toss(&["sample", "--type", "E7", "--count", "3", "--seed", "7"]);
    let second = toss(&["sample", "--type", "E7", "--count", "3", "--seed", "7"]);
    assert_eq!(first.stdout, second.stdout);
    let lines: Vec<&str> = std::str::from_utf8(&first.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 3);
    for (i, line) in lines.iter().enumerate() {
        let path = file(&format!("s{i}.json"), line);
        assert_ne!(toss(&["check", path.to_str().unwrap()]).status.code(), Some(2));
    }
}

#[test]
fn boundary_samples_have_one_tight_instance() {
    let out = toss(&["sample", "--type", "D5", "--count", "2", "--seed", "1", "--on-boundary"]);
    assert_eq!(out.status.code(), Some(0));
    for line in std::str::from_utf8(&out.stdout).unwrap().lines() {
        let report = json(&toss(&["check", file("b.json", line).to_str().unwrap()]));
        assert_eq!(report["member"], true);
        let tight = tight_d_instances(line);
        assert_eq!(tight, 1);
    }
    assert_eq!(toss(&["sample", "--type", "A33", "--on-boundary"]).status.code(), Some(2));
}

/// Counts listed D instances with zero slack directly from the document.
fn tight_d_instances(line: &str) -> usize {
    let v: Value = serde_json::from_str(line).unwrap();
    let part = |i: &str| -> Vec<(i64, i64)> {
        v["mu"][i]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| {
                let (n, d) = s.as_str().unwrap().split_once('/').unwrap();
                (n.parse().unwrap(), d.parse().unwrap())
            })
            .collect()
    };
    let (m1, m2, m3) = (part("1"), part("2"), part("3"));
    // compare |x − y| with z as exact fractions
    let eq = |x: (i64, i64), y: (i64, i64), z: (i64, i64)| {
        let diff = (x.0 as i128 * y.1 as i128 - y.0 as i128 * x.1 as i128).abs();
        diff * z.1 as i128 == z.0 as i128 * x.1 as i128 * y.1 as i128
    };
    let mut tight = 0;
    for z in &m3 {
        tight += usize::from(eq(m1[0], m2[1], *z)) + usize::from(eq(m1[0], m2[0], *z));
    }
    tight
}

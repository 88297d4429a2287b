use std::process::{Command, Output};

fn kvn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kvn"))
        .args(args)
        .env_remove("KVN_ITER_CAP")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn dyadic_enumeration_csv() {
    let out = kvn(&["--dim", "1", "enum", "--kind", "dyadic", "--count", "6"]);
    assert!(out.status.success());
    let coords: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().to_string())
        .collect();
    assert_eq!(coords, ["0", "1", "1/2", "1/4", "3/4", "1/8"]);
}

#[test]
fn rational_enumeration_has_phi_column() {
    let out = kvn(&["--dim", "1", "enum", "--kind", "rational", "--count", "5"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "index,orbit,coord_1,x_1,phi_image");
    let phis: Vec<&str> = lines.map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(phis, ["\"0\"", "\"1\"", "\"1/2\"", "\"1/4\"", "\"3/4\""]);
}

#[test]
fn matrices_json() {
    let out = kvn(&["--dim", "3", "matrices"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["v_minus_one"], "6/7,4/7,2/7");
    assert_eq!(v["B0"][0][3], "1/2");
    assert_eq!(v["V"].as_array().unwrap().len(), 4);
}

#[test]
fn orbit_json() {
    let out = kvn(&["--dim", "1", "--format", "json", "orbit", "--map", "e", "--point", "0", "--count", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pts: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["point"].as_str().unwrap()).collect();
    assert_eq!(pts, ["0", "1", "1/2", "1/3"]);
}

#[test]
fn walsh_and_weyl() {
    let out = kvn(&["--dim", "1", "walsh", "--m", "2", "--point", "1/4"]);
    assert_eq!(stdout(&out), "m,point,value\n2,\"1/4\",-1\n");
    let out = kvn(&["--dim", "1", "weyl", "--m", "1", "--point", "0", "--k", "2"]);
    assert_eq!(stdout(&out), "m,k,point,value,decimal\n1,2,\"0\",0,0\n");
    let out = kvn(&["--dim", "1", "walsh", "--table", "1"]);
    assert_eq!(stdout(&out), "m,0,1\n1,+1,-1\n");
}

#[test]
fn discrepancy_report() {
    let out = kvn(&["--dim", "1", "discrepancy", "--source", "dyadic", "--depth", "1", "--count", "2"]);
    assert_eq!(stdout(&out), "word,count\n0,1\n1,1\nmax_abs_deviation,0,0\n");
}

#[test]
fn figure4_writes_svg() {
    let path = std::env::temp_dir().join(format!("kvn-cli-fig-{}.svg", std::process::id()));
    let out = kvn(&["figure4", "--count", "50", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(svg.matches("<circle").count(), 50);
}

#[test]
fn exit_codes() {
    assert_eq!(kvn(&["orbit", "--map", "x"]).status.code(), Some(2));
    assert_eq!(kvn(&["walsh", "--inner", "1"]).status.code(), Some(2));
    assert_eq!(kvn(&["--dim", "1", "minkowski", "--dir", "inverse", "--point", "1/3"]).status.code(), Some(3));
    assert_eq!(kvn(&["--dim", "1", "figure4", "--out", "/dev/null"]).status.code(), Some(3));
    assert_eq!(kvn(&["orbit", "--map", "k", "--point", "1/4,1/2", "--count", "1"]).status.code(), Some(3));

    let capped = Command::new(env!("CARGO_BIN_EXE_kvn"))
        .args(["--dim", "1", "minkowski", "--dir", "forward", "--point", "2/7"])
        .env("KVN_ITER_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(4));
}

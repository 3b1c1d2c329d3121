use std::process::{Command, Output};

fn lsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsym"))
        .args(args)
        .env_remove("LSYM_MAX_DEGREE")
        .output()
        .expect("lsym runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_prints_in_the_requested_basis() {
    let out = lsym(&["eval", "omegat(h_2)", "--basis", "e"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "e_2");
    assert!(stderr(&out).is_empty());

    let out = lsym(&["eval", "inner(p_2, p_2)"]);
    assert_eq!(stdout(&out).trim(), "2");

    let out = lsym(&["eval", "pleth(h_2, x + y)", "--ring", "laurent:x,y"]);
    assert_eq!(stdout(&out).trim(), "x·y + x^2 + y^2");
}

#[test]
fn eval_json() {
    let out = lsym(&["eval", "exp(h_1)", "-D", "2", "--basis", "h", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["basis"], "h");
    assert_eq!(v["degree_bound"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);

    let out = lsym(&["eval", "inner(h_2, m_[2])", "--json"]);
    assert_eq!(json(&out)["scalar"], "1");
}

#[test]
fn syntax_errors_exit_with_two() {
    let out = lsym(&["eval", "h_"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("column 2"), "{}", stderr(&out));

    let out = lsym(&["eval", "frobnicate(h_1)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lsym(&["eval", "m_[2,0]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_one() {
    for args in [
        vec!["eval", "exp(1 + h_1)"],
        vec!["eval", "log(h_1)"],
        vec!["eval", "x + h_1"],
        vec!["eval", "h_7", "-D", "6"],
        vec!["invariant", "--group", "Sp", "-n", "3", "--tau", "[2]"],
        vec!["invariant", "--group", "Sp", "-n", "2", "--tau", "[3,1]"],
    ] {
        let out = lsym(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(stdout(&out).is_empty(), "{args:?}");
        assert!(stderr(&out).starts_with("error:"), "{args:?}");
    }
    let out = lsym(&["invariant", "--group", "O", "-n", "2", "--tau", "[2,1]"]);
    assert!(stderr(&out).contains("degree filtration"));
}

#[test]
fn degree_cap() {
    let out = lsym(&["eval", "h_1", "-D", "13"]);
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_lsym"))
        .args(["eval", "h_1", "-D", "3"])
        .env("LSYM_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LSYM_MAX_DEGREE"));
}

#[test]
fn convert_lists_every_basis() {
    let out = lsym(&["convert", "s_[2,1]", "-D", "3"]);
    let text = stdout(&out);
    assert!(text.contains("m: m_[2,1] + 2*m_[1,1,1]"), "{text}");
    assert!(text.contains("s: s_[2,1]"));
    let out = lsym(&["convert", "e_2", "--to", "m,h", "--json"]);
    assert_eq!(json(&out).as_array().unwrap().len(), 2);
}

#[test]
fn invariant_records() {
    let out = lsym(&["invariant", "--group", "O", "-n", "4", "--tau", "[1,1,1,1]", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["dim"], "3");
    assert_eq!(v["stable"], true);
    assert_eq!(v["kind"], "exterior");
    assert_eq!(v["oracle_checks"]["multigraph"], 3);

    let out = lsym(&["invariant", "--group", "Sp", "-n", "4", "--tau", "[2,2]", "--kind", "sym", "--json"]);
    let v = json(&out);
    assert_eq!(v["dim"], v["oracle_checks"]["weyl_ct"].to_string());

    let out = lsym(&["invariant", "--group", "Sp", "-n", "2", "--tau", "[3,1]", "--unstable", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["stable"], false);
    assert_eq!(v["dim"], "1");
    assert_eq!(v["oracle_checks"]["weyl_ct"], 0);
}

#[test]
fn oracle_report() {
    let out = lsym(&["oracle", "--group", "Sp", "-n", "4", "--tau", "[2,2]", "--samples", "5000", "--seed", "3", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["exact_values"]["weyl_ct"], 2);
    assert_eq!(v["exact_values"]["series"], 2);
    assert_eq!(v["mc"]["samples"], 5000);
    assert_eq!(v["verdict"], "agree");
    // same seed, same numbers
    let again = json(&lsym(&["oracle", "--group", "Sp", "-n", "4", "--tau", "[2,2]", "--samples", "5000", "--seed", "3", "--json"]));
    assert_eq!(v["mc"], again["mc"]);
}

#[test]
fn theorem_check_and_moments() {
    let out = lsym(&["theorem-check", "--trials", "5", "--ring", "laurent:x,y", "--seed", "4", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["trials"], 5);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);

    let rv = r#"{"outcomes":[{"prob":"1/2","value":"x"},{"prob":"1/2","value":"x + y"}]}"#;
    let out = lsym(&["theorem-check", "--rv", rv, "--ring", "laurent:x,y", "-D", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("counterexamples: 0"));

    let out = lsym(&["moments", "--rv", rv, "--ring", "laurent:x,y", "--tau", "[2]", "--json"]);
    let v = json(&out);
    assert_eq!(v["agree"], true);
    assert_eq!(v["direct"], "1/2·x·y");

    // indeterminates must belong to the ring
    let out = lsym(&["moments", "--rv", rv, "--ring", "laurent:x"]);
    assert_eq!(out.status.code(), Some(1));
    let out = lsym(&["moments", "--rv", r#"{"outcomes":[{"prob":"1/3","value":"1"}]}"#]);
    assert_eq!(out.status.code(), Some(1));
}

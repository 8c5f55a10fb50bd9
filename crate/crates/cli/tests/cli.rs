use std::process::{Command, Output};

use serde_json::Value;

fn persym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_persym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = persym(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn census_of_two_by_two() {
    let v = json(&["census", "single:s=2,k=2"]);
    assert_eq!(v["counts"]["0"], "1");
    assert_eq!(v["counts"]["1"], "3");
    assert_eq!(v["counts"]["2"], "4");
}

#[test]
fn census_csv_of_one_free_row() {
    let out = persym(&["census", "rows:n=1,m=2,k=3", "--csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "rank,count\n0,1\n1,13\n2,66\n3,176\n");
}

#[test]
fn census_of_empty_block() {
    let v = json(&["census", "single:s=0,k=1"]);
    assert_eq!(v["counts"], serde_json::json!({ "0": "1" }));
}

#[test]
fn joint_census_lists_chain() {
    let v = json(&["census", "single:s=2,k=3", "--joint"]);
    assert_eq!(v["chain"].as_array().unwrap().len(), 4);
    assert_eq!(v["counts"]["0,0,0,1"], "1");
}

#[test]
fn gamma_paths_agree() {
    let v = json(&["gamma", "double:s=3,m=2,k=4", "4", "--path", "all"]);
    assert_eq!(v["value"], "15648");
    assert_eq!(v["agree"], true);
    assert_eq!(v["available"], 3);
}

#[test]
fn gamma_closed_values() {
    assert_eq!(json(&["gamma", "triple:s=2,m=0,l=0,k=6", "6"])["value"], "688128");
    assert_eq!(json(&["gamma", "single:s=1,k=1", "1"])["value"], "1");
}

#[test]
fn gamma_outside_closed_forms_names_alternative() {
    let out = persym(&["gamma", "triple:s=2,m=0,l=1,k=3", "2", "--path", "closed"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("recur"));
    let v = json(&["gamma", "triple:s=2,m=0,l=1,k=3", "2", "--path", "all"]);
    assert_eq!(v["agree"], true);
}

#[test]
fn count_single_system() {
    let v = json(&["count", "single", "k=3", "m=2", "--q", "1"]);
    assert_eq!(v["value"], "15");
}

#[test]
fn count_double_system_all_paths() {
    let v = json(&["count", "double", "k=4", "s=3", "m=2", "--q", "3", "--path", "all"]);
    assert_eq!(v["value"], "35356672");
    assert_eq!(v["available"], 4);
}

#[test]
fn count_accepts_colon_form() {
    let v = json(&["count", "double:k=2,s=1,m=1", "--q", "2", "--path", "brute"]);
    let w = json(&["count", "double:k=2,s=1,m=1", "--q", "2", "--path", "moment"]);
    assert_eq!(v["value"], w["value"]);
}

#[test]
fn expsum_at_zero_point() {
    let v = json(&["expsum", "single:s=2,k=3", "--point", "0000"]);
    assert_eq!(v["rank"], "32");
    assert_eq!(v["direct"], "32");
    assert_eq!(v["agree"], true);
}

#[test]
fn expsum_exact_degree_can_be_negative() {
    let mut seen = false;
    for word in 0..32u32 {
        let point = format!("{:05b}", word);
        let v = json(&["expsum", "single:s=3,k=3", "--exact", "--point", &point]);
        assert_eq!(v["agree"], true);
        seen |= v["rank"].as_str().unwrap().starts_with('-');
    }
    assert!(seen);
}

#[test]
fn verify_passing_suite() {
    let v = json(&["verify", "daykin", "--max-s", "4", "--max-k", "6"]);
    assert_eq!(v["failed"], 0);
    assert!(v["instances"].as_u64().unwrap() > 0);
    let v = json(&["verify", "reductions", "--max", "6"]);
    assert_eq!(v["failed"], 0);
}

#[test]
fn verify_fractions() {
    let v = json(&["verify", "fractions", "--all"]);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["rhs"] == "3/2^3" && r["ok"] == true));
    assert!(rows.iter().any(|r| r["rhs"] == "21/2^6" && r["ok"] == true));
}

#[test]
fn failing_suite_exits_four() {
    let out = persym(&["verify", "joint", "--max-s", "2", "--max-k", "3"]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["failures"].as_array().unwrap().iter().all(|r| r["name"].as_str().unwrap().ends_with("[0, 0, 0, 1]")));
}

#[test]
fn budget_refusal_exits_three() {
    let out = persym(&["census", "triple:s=3,m=2,l=0,k=8", "--budget", "20"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2^"));
}

#[test]
fn domain_and_parse_errors_exit_two() {
    assert_eq!(persym(&["census", "quad:s=1"]).status.code(), Some(2));
    assert_eq!(persym(&["count", "double", "k=4", "s=3", "--q", "1"]).status.code(), Some(2));
    assert_eq!(persym(&["expsum", "single:s=2,k=3", "--point", "01"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_can_go_to_file() {
    let dir = std::env::temp_dir().join(format!("persym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let args = ["census", "double:s=2,m=1,k=3", "--joint", "--threads", "2"];
    let first = persym(&args).stdout;
    assert_eq!(first, persym(&args).stdout);
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let out = persym(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), first);
    std::fs::remove_dir_all(&dir).unwrap();
}

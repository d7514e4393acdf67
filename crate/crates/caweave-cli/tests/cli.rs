//! End-to-end tests of the command surface, exit codes and formats.

use std::process::{Command, Output};

fn caweave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caweave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn caweave_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caweave"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn zech_full_table() {
    let o = caweave(&["zech", "--poly", "1+x+x^3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().map(str::trim).collect();
    assert_eq!(
        lines,
        vec!["t Z(t)", "0 inf", "1 3", "2 6", "3 1", "4 5", "5 4", "6 2"]
    );
}

#[test]
fn zech_single_entries() {
    let o = caweave(&["zech", "--poly", "1+x^3+x^4", "--t", "1"]);
    assert_eq!(stdout(&o).trim(), "12");
    let o = caweave(&["zech", "--poly", "1+x+x^3", "--t", "0"]);
    assert_eq!(stdout(&o).trim(), "inf");
    // bit-string polynomial form accepted
    let o = caweave(&["zech", "--poly", "1101", "--t", "1"]);
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn zech_json() {
    let o = caweave(&["zech", "--poly", "1+x+x^3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["period"], 7);
    assert_eq!(v["zech"][0], serde_json::Value::Null);
    assert_eq!(v["zech"][1], 3);
}

#[test]
fn interleave_62_bit_example() {
    let o = caweave(&[
        "interleave",
        "--poly",
        "1+x^2+x^5",
        "--seed",
        "11111",
        "--shifts",
        "0,17",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("11101010100100001110011110100111011101000000110100110111100100"));
    assert!(out.contains("period=62 lc=10 max_lc=true"));
}

#[test]
fn interleave_factored_minpoly() {
    let o = caweave(&[
        "interleave",
        "--poly",
        "1+x^2+x^3",
        "--seed",
        "111",
        "--shifts",
        "0,1",
    ]);
    assert!(stdout(&o).contains("lc=6"));
    assert!(stdout(&o).contains("minpoly=(1+x^2+x^3)^2"));
}

#[test]
fn interleave_single_stream_echoes_pn() {
    let o = caweave(&[
        "interleave",
        "--poly",
        "1+x^2+x^3",
        "--seed",
        "111",
        "--shifts",
        "0",
    ]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "1110100");
}

#[test]
fn interleave_json_round_trips_as_spec_input() {
    let o = caweave(&[
        "interleave",
        "--poly",
        "1+x^2+x^5",
        "--seed",
        "11111",
        "--shifts",
        "0,17",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let spec_json = v["spec"].to_string();
    let o2 = caweave(&["interleave", "--spec", &spec_json, "--format", "json"]);
    assert!(o2.status.success());
    let v2: serde_json::Value = serde_json::from_str(stdout(&o2).trim()).unwrap();
    assert_eq!(v, v2);
}

#[test]
fn synth_102_worked_example() {
    let o = caweave(&[
        "synth",
        "--family",
        "102",
        "--poly",
        "1+x^3+x^4",
        "--seed",
        "1111",
        "--shifts",
        "0,4",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("length=10"));
    assert!(out.contains("recurrence_shifts=24,18,12,6"));
    assert!(out.contains("column_index,part_index,shift_or_ZERO"));
}

#[test]
fn synth_90150_worked_example() {
    let o = caweave(&[
        "synth",
        "--family",
        "90150",
        "--poly",
        "1+x^2+x^5",
        "--seed",
        "11111",
        "--shifts",
        "0,17",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("rules=0111001110,1111111111"));
    assert!(out.contains("verified=true,true"));
}

#[test]
fn synth_json_schema() {
    let o = caweave(&["synth", "--family", "102", "--poly", "1+x^3+x^4", "--seed", "1111",
        "--shifts", "0,4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["family"], "102");
    assert_eq!(v["predicted_length"], 10);
    assert_eq!(v["minimal_length"], 10);
    assert_eq!(v["recurrence_shifts"], serde_json::json!([24, 18, 12, 6]));
    assert_eq!(v["ledger"][0]["parts"], serde_json::json!(["0", "4"]));

    let o = caweave(&["synth", "--family", "90150", "--poly", "1+x^2+x^5", "--seed", "11111",
        "--shifts", "0,17", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["length"], 10);
    assert_eq!(v["rules"], serde_json::json!(["0111001110", "1111111111"]));
    assert_eq!(v["verified"], serde_json::json!([true, true]));
}

#[test]
fn synth_rejects_degraded_spec() {
    // shifts (0,4) at degree 3 collapse to LC 3 < 6
    let o = caweave(&[
        "synth",
        "--family",
        "102",
        "--poly",
        "1+x^2+x^3",
        "--seed",
        "111",
        "--shifts",
        "0,4",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("LC 3"));
}

#[test]
fn synth_render_draws_grid() {
    let o = caweave(&[
        "synth",
        "--family",
        "90150",
        "--poly",
        "1+x^2+x^3",
        "--seed",
        "111",
        "--shifts",
        "0,1",
        "--render",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains('█'));
    assert!(stdout(&o).contains('·'));
}

#[test]
fn compare_reports_both_families() {
    let o = caweave(&[
        "compare",
        "--poly",
        "1+x^2+x^5",
        "--seed",
        "11111",
        "--shifts",
        "0,17",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("family=102: predicted_length=62 minimal_length=62"));
    assert!(out.contains("family=90150: length=10"));
}

#[test]
fn reproduce_pass_tables() {
    for table in ["table2", "table3", "table4", "table6", "table7", "ex102ca4"] {
        let o = caweave(&["reproduce", table]);
        assert!(o.status.success(), "{table}: {}", stdout(&o));
        assert!(stdout(&o).contains(&format!("{table}: PASS")));
    }
}

#[test]
fn reproduce_table5_selected_cells() {
    let o = caweave(&["reproduce", "table5", "--cells", "t3L3,t6L3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    // a cell whose measured lengths exceed the tabulated bound: honest
    // mismatch, exit code 1
    let o = caweave(&["reproduce", "table5", "--cells", "t5L4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL cell t5L4"));
}

#[test]
fn reproduce_all_runs_every_table() {
    // table5 contains the four cells whose measured lengths exceed the
    // bundled bounds, so the aggregate run reports a mismatch
    let o = caweave(&["reproduce", "all"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    for table in
        ["table2", "table3", "table4", "table6", "table7", "ex102ca3", "ex102ca4", "ex102ca3x4"]
    {
        assert!(out.contains(&format!("{table}: PASS")), "{table} missing");
    }
    assert!(out.contains("table5: FAIL"));
}

#[test]
fn reproduce_validation_errors() {
    let o = caweave(&["reproduce", "table5", "--cells", "t9L9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = caweave(&["reproduce", "nosuchtable"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_polynomial_is_a_validation_error() {
    let o = caweave(&["zech", "--poly", "1+x^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("reducible"));
    let o = caweave(&["zech", "--poly", "1+x+x^2+x^3+x^4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not primitive"));
}

#[test]
fn degree_cap_env_override() {
    let o = caweave_env(&["zech", "--poly", "1+x^2+x^5"], "CAWEAVE_MAX_L", "4");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds the cap"));
}

#[test]
fn stream_count_flag_checked() {
    let o = caweave(&[
        "interleave",
        "--poly",
        "1+x^2+x^3",
        "--seed",
        "111",
        "--shifts",
        "0,1",
        "--t",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "synth",
        "--family",
        "102",
        "--poly",
        "1+x^2+x^3",
        "--seed",
        "100",
        "--shifts",
        "0,5,4,1",
        "--format",
        "json",
    ];
    let a = caweave(&args);
    let b = caweave(&args);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(a.status.success());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("caweave-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zech.txt");
    let o = caweave(&["zech", "--poly", "1+x+x^3", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.contains("1 3"));
    std::fs::remove_file(path).ok();
}

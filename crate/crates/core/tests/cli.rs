use std::process::{Command, Output};

use slabqed::cli::{parse_csv, CSV_HEADER};

fn slabqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slabqed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn rate_prints_one_row() {
    let out = slabqed(&["rate", "--config", "cp", "--l", "3.141592653589793", "--s", "1.5707963267948966", "--orientation", "perp"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.next(), Some("cp,perp,3.14159265359,1.57079632679,1.125,0,1.125"));
    assert_eq!(lines.next(), None);
}

#[test]
fn pc_keeps_its_label_and_mirrors_cp() {
    let pc = parse_csv(&stdout(&slabqed(&["rate", "--config", "pc", "--l", "10", "--s", "2"]))).unwrap();
    let cp = parse_csv(&stdout(&slabqed(&["rate", "--config", "cp", "--l", "10", "--s", "8"]))).unwrap();
    assert_eq!(pc[0].config.label(), "pc");
    assert_eq!(pc[0].s, 2.0);
    assert_eq!(pc[0].ratios, cp[0].ratios);
}

#[test]
fn usage_errors_exit_two() {
    let out = slabqed(&["rate", "--config", "cp", "--l", "1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s exceeds l"));
    assert_eq!(slabqed(&["rate", "--config", "xy", "--l", "1", "--s", "0.5"]).status.code(), Some(2));
    assert_eq!(slabqed(&["rate", "--config", "cc", "--l", "-1", "--s", "0"]).status.code(), Some(2));
    assert_eq!(slabqed(&["figure", "fig1"]).status.code(), Some(2));
    assert_eq!(slabqed(&["threshold", "--config", "cp", "--orientation", "iso"]).status.code(), Some(2));
    assert_eq!(slabqed(&["oracle-check", "--config", "cp", "--l", "2", "--s", "1", "--radial", "8"]).status.code(), Some(2));
}

#[test]
fn sweeps_are_byte_identical_across_runs() {
    let args = ["sweep", "--config", "cp", "--vary", "s", "--l", "7.3", "--grid", "257"];
    let a = slabqed(&args);
    let b = slabqed(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(parse_csv(&stdout(&a)).unwrap().len(), 257);
}

#[test]
fn figure_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig4.csv");
    let out = slabqed(&["figure", "fig4", "--grid", "100", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let rows = parse_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[0].l, 0.01);
    assert_eq!(rows[99].l, 10.0);
}

#[test]
fn threshold_reports_both_values() {
    let out = slabqed(&["threshold", "--config", "pp", "--orientation", "perp"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("analytic threshold: l = 3.14159265359 (= 1 pi)"), "{text}");
    assert!(text.contains("zero for all s below threshold: yes"));

    let out = slabqed(&["threshold", "--config", "cc", "--orientation", "perp"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no suppression window"));
}

#[test]
fn oracle_check_agrees_at_a_hand_value() {
    let out = slabqed(&["oracle-check", "--config", "pp", "--l", "1.5707963267948966", "--s", "0.4", "--orientation", "par"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("closed_form: 1.5\n"), "{text}");
    let rel: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("relative_error: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(rel < 1e-3);
}

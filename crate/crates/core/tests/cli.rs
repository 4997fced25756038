use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vladimirov")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn integrate_prints_exact_rows() {
    let o = run(&["integrate", "--p", "3", "--alpha", "2", "--levels", "0..1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "formula,q,alpha,n,closed,oracle,delta,closed_exact,exact_match,fit_residual");
    assert_eq!(lines.len(), 1 + 8);
    // int_{|x| <= 1} |x| dx over Q_3 = (2/3) / (1 - 1/9) = 3/4
    assert!(lines[1]
        .starts_with("power_over_ball,3,2,0,7.50000000000000e-1,7.50000000000000e-1,0.00000000000000e0,3/4,true,"));
}

#[test]
fn output_is_deterministic() {
    let args = ["apply", "riesz", "--alpha", "1/2", "--fn", "steps_p3.json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kernel_json_output() {
    let o = run(&["kernel", "--p", "2", "--alpha", "0.5", "--shells", "1..2", "--check-integral", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "kernel");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!((rows[0]["R"].as_f64().unwrap() + 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn invert_reports_both_regimes() {
    let o = run(&["invert", "--p", "2", "--alpha", "1/2", "--fn", "fine_p2.json", "--nu-min", "1", "--nu-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(",bounded,"));
    assert!(text.contains("2,0.00000000000000e0,0.00000000000000e0,true,exact,"));
}

#[test]
fn multidim_and_fourier_checks_pass() {
    for args in [
        &["multidim-check", "--p", "2", "--deg", "2", "--alpha", "1", "--fn", "one_OO.json"][..],
        &["fourier-check", "--alpha", "3/2", "--fn", "lizorkin_fine_p3.json"][..],
        &["apply", "multiplier", "--alpha", "1", "--fn", "one_O.json"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["apply", "vladimirov", "--alpha", "1", "--fn", "one_O.json"]);
    assert!(stdout(&o).contains("vladimirov,(1/2),-3.33333333333333e-1,0.00000000000000e0,true,"));
}

#[test]
fn tolerance_override_turns_checks_red() {
    let o = Command::new(env!("CARGO_BIN_EXE_vladimirov"))
        .args(["fourier-check", "--fn", "ramp_p2.json", "--alpha", "1/2"])
        .env("ULTRA_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("assertion failed"));
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["kernel", "--p", "4", "--alpha", "1"][..],
        &["kernel", "--p", "2", "--alpha", "-1"][..],
        &["invert", "--p", "3", "--alpha", "1/2", "--fn", "one_O.json"][..],
        &["invert", "--alpha", "1/2", "--fn", "/no/such/file.json"][..],
        &["invert", "--alpha", "2", "--fn", "one_O.json"][..],
        &["integrate", "--p", "2", "--alpha", "1", "--levels", "3..1"][..],
        &["frobnicate"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

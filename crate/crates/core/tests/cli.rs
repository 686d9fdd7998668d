use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modunit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeros_53_reports_the_sextic() {
    let o = run(&["zeros", "53"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("p_53(T) = T^6 - 20T^5 + 95T^4 - 156T^3 + 145T^2 - 174T - 44"));
    assert!(text.contains("trivial zero: (1, 0)"));
}

#[test]
fn coeffs_only_is_machine_readable() {
    let o = run(&["--coeffs-only", "zeros", "37"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines[0], "[1, -23, 44, 2, -3]");
}

#[test]
fn ramanujan_quadratic_holds() {
    let o = run(&["verify", "ramanujan", "13"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("OK residual=0"));
}

#[test]
fn survey_matches_known_levels() {
    let o = run(&["survey", "--max", "200"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("109"));
    assert!(text.contains("197"));
}

#[test]
fn bad_arguments_exit_nonzero() {
    let o = run(&["bernoulli", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: BadLevel"));
    let o = run(&["--precision", "4", "bernoulli", "37"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["no-such-command"]);
    assert!(!o.status.success());
}

#[test]
fn transformation_check_is_deterministic() {
    let a = stdout(&run(&["verify", "transform", "13"]));
    let b = stdout(&run(&["verify", "transform", "13"]));
    assert!(a.starts_with("OK"));
    assert_eq!(a, b);
}

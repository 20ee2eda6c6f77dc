use std::process::{Command, Output};

fn fna(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fna")).args(args).output().expect("run fna")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

#[test]
fn eval_prints_normal_form() {
    let o = fna(&["eval", "N(x)*N(y)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[x [y]] + [[x] y] - [[x y]]");
}

#[test]
fn eval_json_and_latex() {
    let o = fna(&["--format", "json", "eval", "1/2*x - 1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);

    let o = fna(&["eval", "--format", "latex", "N(x)"]);
    assert_eq!(stdout(&o), "\\lfloor x\\rfloor");
}

#[test]
fn coalgebra_commands() {
    assert_eq!(stdout(&fna(&["coprod", "N(x) y"])), "1 (x) [x] y");
    assert_eq!(stdout(&fna(&["counit", "3/2 + x"])), "3/2");
    assert_eq!(stdout(&fna(&["antipode", "2 + N(x)"])), "2");
}

#[test]
fn degree_and_factor() {
    let o = fna(&["--quiet", "degree", "x + N(x) y"]);
    assert_eq!(stdout(&o), "1\tx\n3\t[x] y");
    let o = fna(&["factor", "x N(y) z"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("factors: x <> [y] <> z"), "{text}");
    assert!(text.contains("width: 3"));

    let o = fna(&["factor", "x + y"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let o = fna(&["enumerate", "--alphabet", "x", "--max-degree", "3", "--counts-only"]);
    assert_eq!(stdout(&o), "1 2 5 14");
    let o = fna(&["enumerate", "--alphabet", "x,y", "--max-degree", "1"]);
    assert_eq!(stdout(&o), "0 (1): 1\n1 (3): x, y, [1]");
}

#[test]
fn check_all_passes() {
    let o = fna(&["check", "--law", "all", "--alphabet", "x", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count() >= 20);
}

#[test]
fn check_single_law_json_and_random() {
    let o = fna(&["check", "--law", "nijenhuis", "--alphabet", "x", "--max-degree", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["passed"], true);
    assert_eq!(v[0]["instances_checked"], 64);

    let a = fna(&["check", "--law", "delta_mult", "--alphabet", "x,y", "--max-degree", "3", "--random", "50", "--seed", "7"]);
    let b = fna(&["check", "--law", "delta_mult", "--alphabet", "x,y", "--max-degree", "3", "--random", "50", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let o = fna(&["eval", "2*x +* y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("offset 5"), "{err}");
    assert!(err.lines().last().unwrap().ends_with("     ^"), "{err}");

    assert_eq!(fna(&["check", "--law", "nope"]).status.code(), Some(2));
    assert_eq!(fna(&["enumerate", "--alphabet", "x,x", "--max-degree", "2"]).status.code(), Some(2));
    assert_eq!(fna(&["frobnicate"]).status.code(), Some(2));
}

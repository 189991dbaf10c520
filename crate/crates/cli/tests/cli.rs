use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bsquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsquad")).args(args).output().unwrap()
}

fn bsquad_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bsquad"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spherical_example_solves_with_small_conjugators() {
    let o = bsquad(&["solve", "--base", "2", "--format", "record", "z^-1 a z w^-1 a w v^-1 a^-4 v"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("solution.z: t\n"), "{out}");
    assert!(out.contains("solution.w: t\n"), "{out}");
    assert!(out.contains("solution.v: 1\n"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&bsquad(&["solve", "--base", "3", "[x,y] u^-1 a u"])), 1);
    assert_eq!(code(&bsquad(&["solve", "--base", "0", "x a x"])), 2);
    assert_eq!(code(&bsquad(&["solve", "x a x y"])), 2);
    assert_eq!(code(&bsquad(&["solve", "x a ("])), 2);
    assert_eq!(code(&bsquad(&["solve", "--max-states", "0", "x a x"])), 2);
}

#[test]
fn solve_output_verifies() {
    for (n, eq) in [("2", "x a x"), ("3", "[x,y] a^2 t T"), ("-2", "x^2 y^2 t^2 a"), ("2", "z^-1 a z a^-2")] {
        let o = bsquad(&["solve", "--base", n, "--format", "record", eq]);
        assert_eq!(code(&o), 0, "{eq}");
        let v = bsquad_stdin(&["verify", "--base", n, eq, "-"], &stdout(&o));
        assert_eq!(code(&v), 0, "{eq}: {}", stdout(&o));
    }
}

#[test]
fn verify_rejects_and_errors() {
    let ok = bsquad_stdin(&["verify", "--base", "2", "x^2 Z a z", "-"], "solution.x: A\nsolution.z: t\n");
    assert_eq!(code(&ok), 0);
    let bad = bsquad_stdin(&["verify", "x a x", "-"], "solution.x: a\n");
    assert_eq!(code(&bad), 1);
    let missing = bsquad_stdin(&["verify", "x a x", "-"], "solvable: true\n");
    assert_eq!(code(&missing), 2);
    let garbage = bsquad_stdin(&["verify", "x a x", "-"], "solution.x t a\n");
    assert_eq!(code(&garbage), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["solve", "--base", "3", "--format", "record", "x a y t X b Y"];
    let a = bsquad(&args);
    let b = bsquad(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn batch_file() {
    let dir = std::env::temp_dir().join(format!("bsquad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("eqs.txt");
    std::fs::write(&p, "# two equations\nx a x\n\n[x,y] a\n").unwrap();
    let o = bsquad(&["solve", "--base", "3", "--file", p.to_str().unwrap()]);
    // [x,y] a needs sigma_a divisible by n - 1 = 2
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).matches("solvable").count(), 2);
}

#[test]
fn eval_and_normalize() {
    let o = bsquad(&["--base", "3", "--format", "record", "eval", "T a^5 t"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("element: (15, 0)\n"));
    let o = bsquad(&["--format", "record", "normalize", "x a x"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("kind: nonorientable\n") && out.contains("genus: 1\n"), "{out}");
}

#[test]
fn expsolve_exact_and_congruence() {
    let o = bsquad(&["expsolve", "--", "1", "1", "-4"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "1 1 0"));
    assert_eq!(code(&bsquad(&["expsolve", "1", "1", "1"])), 1);
    let o = bsquad(&["expsolve", "--modulus", "3", "1", "1", "1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "0 0 0"));
}

#[test]
fn reduce_matches_brute_force() {
    let o = bsquad(&["reduce", "part", "3", "1", "2", "--solve"]);
    assert_eq!(code(&o), 0);
    let o = bsquad(&["reduce", "part", "3", "1", "1", "--solve"]);
    assert_eq!(code(&o), 1);
    let o = bsquad(&["--base", "3", "reduce", "3part", "4", "5", "5", "4", "4", "6", "--gadget", "genus1", "--solve"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&bsquad(&["reduce", "3part", "1", "2"])), 2);
    assert_eq!(code(&bsquad(&["reduce", "part"])), 2);
    let p = std::env::temp_dir().join(format!("bsquad-items-{}.txt", std::process::id()));
    std::fs::write(&p, "4\n4\n4\n4\n4\n4\n").unwrap();
    let o = bsquad(&["reduce", "3part", "--file", p.to_str().unwrap(), "--solve"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn selftest_small_scale() {
    let o = bsquad(&["selftest", "--scale", "0.01"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(": PASS")).count(), 8);
    let o = bsquad(&["selftest", "--scale", "0.01", "--max-states", "50", "--max-exponent", "3"]);
    assert_eq!(code(&o), 2);
    let o = bsquad(&["selftest", "--scale", "0.01", "--size-c-linear", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("criterion 7: FAIL"));
}

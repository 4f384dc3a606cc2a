use super::*;

fn call(args: &[&str]) -> Outcome {
    run(std::iter::once("supergrass").chain(args.iter().copied()))
}

#[test]
fn relations_hold_to_roundoff() {
    let o = call(&["relations"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().skip(1).collect();
    assert_eq!(lines.len(), 9);
    for l in lines {
        let dev: f64 = l.split_whitespace().rev().nth(1).unwrap().parse().unwrap();
        assert!(dev <= 1e-12, "{l}");
    }
    // Only the boson commutator involves sqrt(n)^2; the rest are exact.
    assert_eq!(o.stdout.matches("0.000e0 ok").count(), 8);
}

#[test]
fn coherent_solve_reports_a_small_residual() {
    let o = call(&["solve", "--A-minus", "1", "--Z", "0.5"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("2 families"), "{}", o.stdout);
    let residuals: Vec<f64> = o
        .stdout
        .lines()
        .filter_map(|l| l.trim().strip_prefix("residual "))
        .map(|r| r.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(residuals.len(), 2);
    assert!(residuals.iter().all(|&r| r < 1e-9));
}

#[test]
fn solve_with_oracle() {
    let o = call(&["--grassmann-order", "4", "--fock-cutoff", "24", "solve", "--A-minus", "1", "--B-minus", "0.3*e1", "--Z", "0.2", "--oracle"]);
    assert_eq!(o.code, 0, "{}\n{}", o.stdout, o.stderr);
    assert!(o.stdout.contains("oracle deviation"));
    assert!(o.stdout.contains("oracle body dimension"));
}

#[test]
fn word_sum_suite_passes() {
    let o = call(&["verify", "--suite", "appendixB"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("criterion  4 PASS"));
    assert!(o.stdout.contains("criterion  5 PASS"));
    assert!(o.stdout.ends_with("2/2 criteria passed\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["frobnicate"]).code, 2);
    assert_eq!(call(&["verify", "--suite", "nonsense"]).code, 2);
    assert_eq!(call(&["solve", "--Z", "1 +"]).code, 2);
    assert_eq!(call(&["solve", "--Z", "e9"]).code, 2);
    assert_eq!(call(&["construct", "--family", "no_such_family"]).code, 2);
    assert_eq!(call(&["isospec", "--family", "h2", "--param", "beta1=0.4"]).code, 2, "even beta1");
    assert_eq!(call(&["isospec", "--family", "h2", "--param", "gamma=e1"]).code, 2);
    let help = call(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
}

#[test]
fn construct_fails_above_the_tolerance() {
    let args = ["--grassmann-order", "4", "--fock-cutoff", "20", "construct", "--family", "gen_coherent", "--param", "z=0.4+0.3*e1*e2", "--param", "a_minus=1"];
    let ok = call(&args);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert!(ok.stdout.contains("residual "));
    let mut strict = vec!["--tol", "0"];
    strict.extend_from_slice(&args);
    let o = call(&strict);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("FAIL"));
}

#[test]
fn constructed_document_parses_back() {
    let o = call(&["--grassmann-order", "4", "--fock-cutoff", "20", "construct", "--family", "susy_standard", "--param", "z0=0.3", "--param", "theta1=0.2*e1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let json = &o.stdout[o.stdout.find('{').unwrap()..];
    let psi = parse_state(&StateDocument::from_text(json).unwrap()).unwrap();
    assert_eq!(psi.space(), FockSpace::new(4, 20, 8).unwrap());
    assert!(!psi.get(0, Sector::Minus).is_zero());
}

#[test]
fn isospec_reports_are_deterministic() {
    let args = ["--grassmann-order", "4", "--fock-cutoff", "20", "--guard", "4", "isospec", "--family", "spin", "--param", "gamma0=0.3", "--param", "delta0=0.3i", "--levels", "8", "--z", "0.4"];
    let first = call(&args);
    assert_eq!(first.code, 0, "{}\n{}", first.stdout, first.stderr);
    assert!(first.stdout.contains("coherent state j = -"));
    assert_eq!(call(&args), first);
}

#[test]
fn isospec_conjugation() {
    let o = call(&[
        "--grassmann-order", "4", "--fock-cutoff", "24", "--guard", "4", "isospec", "--family", "h2", "--param", "beta1=0.4*e3",
        "--conjugate", "G", "--conj-param", "beta0=0.2*e3*e4", "--conj-param", "gamma1=e1", "--conj-param", "delta1=e2", "--levels", "10",
    ]);
    assert_eq!(o.code, 0, "{}\n{}", o.stdout, o.stderr);
    assert!(o.stdout.starts_with("isospectral system h2 (conjugated)"));
    assert!(o.stdout.contains("eta - eta‡"));
    let bad = call(&["--grassmann-order", "4", "isospec", "--family", "h2", "--param", "beta1=e1", "--conjugate", "X"]);
    assert_eq!(bad.code, 2);
}

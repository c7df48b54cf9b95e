use knotconc::laurent::LaurentPoly;
use knotconc_cli::commands::{parse_positive_range, parse_range};
use knotconc_cli::poly::parse_poly;
use std::io::Write;
use std::process::Command;

const FACTS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/facts/standard.facts");

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_knotconc")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("knotconc-cli-{}-{}", std::process::id(), name));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn polynomial_text_round_trips() {
    for s in ["2*t^2 - 5*t + 2", "-9 + 8*t^-1", "-t^3 + 1/2*t", "t", "0", "-7"] {
        let p = parse_poly(s).unwrap();
        assert_eq!(p.to_string(), s);
    }
    assert_eq!(parse_poly("8t - 9").unwrap(), LaurentPoly::from_ints(0, &[-9, 8]));
    assert_eq!(parse_poly(" t + t ").unwrap(), LaurentPoly::from_ints(1, &[2]));
    assert_eq!(parse_poly("3 t^-2").unwrap(), LaurentPoly::from_ints(-2, &[3]));
    for bad in ["", "t^", "2*", "1/0", "x", "t t", "2 + * t"] {
        assert!(parse_poly(bad).is_err(), "{}", bad);
    }
}

#[test]
fn ranges() {
    assert_eq!(parse_range("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
    assert_eq!(parse_range("1..=3").unwrap(), vec![1, 2, 3]);
    assert_eq!(parse_range("2, 4").unwrap(), vec![2, 4]);
    assert_eq!(parse_range("7").unwrap(), vec![7]);
    assert!(parse_range("5..1").is_err());
    assert!(parse_range("a").is_err());
    assert!(parse_positive_range("0..2").is_err());
}

#[test]
fn invariants_of_twist_knot() {
    let (code, out, _) = run(&["invariants", "twist(2)"]);
    assert_eq!(code, 0);
    assert!(out.contains("alexander: 2*t^2 - 3*t + 2"));
    assert!(out.contains("arf: 0"));
    assert!(out.contains("tau: 1"));
    // ρ₀ = −2(1 − arccos(3/4)/π) ≈ −1.5398930876747...
    let line = out.lines().find(|l| l.starts_with("rho0 enclosure:")).unwrap();
    let body = line.trim_start_matches("rho0 enclosure: [").trim_end_matches(']');
    let (lo, hi) = body.split_once(", ").unwrap();
    let exact = -2.0 * (1.0 - (0.75f64).acos() / std::f64::consts::PI);
    assert!(lo.parse::<f64>().unwrap() <= exact + 1e-14 && exact - 1e-14 <= hi.parse::<f64>().unwrap());
}

#[test]
fn invariants_of_cabled_infection_and_unknot() {
    let (code, out, _) = run(&["invariants", "cable(infect(Q(3), twist(2)), 2)"]);
    assert_eq!(code, 0);
    assert!(out.contains("alexander: 12*t^4 - 25*t^2 + 12"));
    let (code, out, _) = run(&["invariants", "unknot"]);
    assert_eq!(code, 0);
    assert!(out.contains("alexander: 1\n") && out.contains("rho0: 0\n") && out.contains("tau: 0\n"));
}

#[test]
fn invariants_from_seifert_file() {
    let path = temp_file("trefoil.seifert", "# trefoil\ng=1\n-1 1\n0 -1\n");
    let (code, out, _) = run(&["invariants", "--seifert", &path]);
    assert_eq!(code, 0);
    assert!(out.contains("alexander: t^2 - t + 1"));
    assert!(out.contains("arf: 1"));
    let bad = temp_file("bad.seifert", "g=1\n1 2 3\n");
    assert_eq!(run(&["invariants", "--seifert", &bad]).0, 2);
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = run(&["invariants", "sum(twist(1),\n twist(2)))"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{}", err);
    assert_eq!(run(&["prime", "t^"]).0, 2);
    assert_eq!(run(&["robust", "--op", "Q", "--k", "3", "--facts", "/nonexistent"]).0, 2);
    assert_eq!(run(&["robust", "--op", "Z", "--k", "3", "--facts", FACTS]).0, 2);
    assert_eq!(run(&["invariants"]).0, 2);
}

#[test]
fn primality_commands() {
    let (code, out, _) = run(&["prime", "8*t^5 - 9", "--primes", "2", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("irreducible") && out.contains("Irreducible"));
    let (code, out, _) = run(&["prime", "t^2 - 1"]);
    assert_eq!(code, 0);
    assert!(out.contains("witness check"));
    let (code, out, _) = run(&["strongly-prime", "8*t - 9"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: strongly prime"));
    let (code, out, _) = run(&["strongly-prime", "t - 4"]);
    assert_eq!(code, 0);
    assert!(out.contains("not strongly prime, f(t^2)"));
    let (code, out, _) = run(&["strongly-coprime", "2*t - 3", "3*t - 4"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: strongly coprime"));
}

#[test]
fn catalan_box() {
    let (code, out, _) = run(&["catalan", "--x-max", "100", "--y-max", "100", "--a-max", "6", "--b-max", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains(": 1\n  3^2 - 2^3 = 1\n"));
}

#[test]
fn legendrian_commands() {
    let (code, out, _) = run(&["legendrian", "--builtin", "twist-front", "--j", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("tb = 1, rot = 0"));
    let (code, out, _) = run(&[
        "legendrian", "--builtin", "q-front", "--k", "3", "--companion-tb", "0", "--iterate", "2", "--genus", "1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("operator tb = 0, rot = 1"));
    assert!(out.contains("tau: 1 "));
    let (code, out, _) = run(&["legendrian", "--builtin", "q-front", "--k", "3", "--companion-tb", "-1"]);
    assert_eq!(code, 1);
    assert!(out.contains("refused"));
    let path = temp_file("unknot.front", "L1 R1\n");
    let (code, out, _) = run(&["legendrian", &path]);
    assert_eq!(code, 0);
    assert!(out.contains("tb = -1, rot = 0"));
    let bad = temp_file("bad.front", "L1 Q2\n");
    assert_eq!(run(&["legendrian", &bad]).0, 2);
}

#[test]
fn robust_certificates() {
    let (code, out, _) = run(&["robust", "--op", "Q", "--k", "3", "--p", "1..5", "--facts", FACTS, "--jobs", "2"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("robust: 5 of 5 asserted"));
    assert_eq!(out.matches("assumed (1):\n  - rho(M(Q(3)), <0>) != 0").count(), 5);
    let (serial, _, _) = run(&["robust", "--op", "Q", "--k", "3", "--p", "1..5", "--facts", FACTS]);
    assert_eq!(serial, 0);
    // Q(2) has no cited nonvanishing fact.
    let (code, out, _) = run(&["robust", "--op", "Q", "--k", "2", "--facts", FACTS]);
    assert_eq!(code, 1);
    assert!(out.contains("missing fact"));
    let (code, out, _) = run(&["robust", "--op", "R", "--k", "8", "--p", "5", "--facts", FACTS]);
    assert_eq!(code, 0);
    assert!(out.contains("8*t^5 - 9 is irreducible"));
}

#[test]
fn parallel_output_is_identical() {
    let args = ["robust", "--op", "R", "--k", "1..3", "--p", "1..2", "--facts", FACTS];
    let (_, a, _) = run(&args);
    let mut par = args.to_vec();
    par.extend(["--jobs", "4"]);
    let (_, b, _) = run(&par);
    assert_eq!(a, b);
}

#[test]
fn independence_small_family() {
    let (code, out, _) =
        run(&["independence", "--family", "thmA", "--k", "1", "--n", "1", "--p", "1..2", "--m", "1", "--facts", FACTS]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("strongly coprime, 196"));
    assert!(out.contains("no relation"));
    assert!(out.contains("conclusion: 2 knots are linearly independent"));
    let (code, out, _) = run(&["independence", "--k", "1", "--n", "1", "--p", "1..2", "--m", "1", "--facts", "/dev/null"]);
    assert_eq!(code, 1);
    assert!(out.contains("conclusion: withheld"));
}

#[test]
fn filtration_and_kauffman() {
    let (code, out, _) = run(&["filtration", "infect(R(1, J='neg-trefoils-3'), twist(4))", "--facts", FACTS]);
    assert_eq!(code, 0);
    assert!(out.contains("levels: F_1 ∩ B_0"));
    let (code, out, _) = run(&["kauffman", "--facts", FACTS]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("= 1 (mod 2)").count(), 4);
    assert!(out.contains("Alexander(d) = 1  (topologically slice)"));
    assert!(out.contains("tau(d) = -1"));
    assert_eq!(run(&["kauffman"]).0, 1);
}

#[test]
fn profile_dump_tsv() {
    let (code, out, _) = run(&["profile-dump", "twist(3)"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].split('\t').count(), 3);
    assert!(rows[2].ends_with("\t-2"));
    assert!(rows[1].starts_with("[0.000000000000000, 0.000000000000000]\t"));
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["invariants", "sum(twist(3), neg(twist(5)))"]);
    let b = run(&["invariants", "sum(twist(3), neg(twist(5)))"]);
    assert_eq!(a, b);
}

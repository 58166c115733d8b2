use std::path::PathBuf;
use std::process::{Command, Output};

use autoshift::fixtures;
use autoshift::report::{CompressionView, MinimizeReport};
use autoshift::rule::LocalRule;
use autoshift::{LetterCoding, Substitution};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autoshift")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("autoshift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn substitutions_print_and_parse_back() {
    for (name, _) in fixtures::SUBSTITUTIONS {
        let t = fixtures::substitution(name).unwrap();
        assert_eq!(Substitution::parse(&t.to_string()).unwrap(), t, "{name}");
    }
}

#[test]
fn codings_print_and_parse_back() {
    for (name, _) in fixtures::CODINGS {
        let t = fixtures::substitution(name).unwrap();
        let c = fixtures::coding(name).unwrap();
        assert_eq!(LetterCoding::parse(&c.to_string(), t.alphabet()).unwrap(), c, "{name}");
    }
}

#[test]
fn rule_tables_print_and_parse_back() {
    let cases = [
        ("orbit_factor", "no_automorphism", Some("no_automorphism_factor")),
        ("twisted", "twisted", None),
        ("salvaged", "salvaged", None),
        ("involution", "involution", None),
    ];
    for (rule, sub, target) in cases {
        let t = fixtures::substitution(sub).unwrap();
        let target = target.map(|n| fixtures::substitution(n).unwrap().alphabet().clone());
        let target = target.as_ref().unwrap_or(t.alphabet());
        let r = fixtures::rule(rule, t.alphabet(), Some(target)).unwrap();
        let back = LocalRule::parse(&r.to_string(), t.alphabet(), Some(target)).unwrap();
        assert!(back.equivalent(&r, &t).unwrap(), "{rule}");
    }
}

#[test]
fn analyze_succeeds() {
    let out = run(&["analyze", &fixture("centraliser_larger.sub")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("minimal sets: {a,b} {a,c}"), "{text}");
}

#[test]
fn verify_rule_exit_codes() {
    let sub = fixture("twisted.sub");
    let rule = fixture("twisted.rule");
    assert_eq!(code(&["verify-rule", &sub, &rule, "--p", "2", "--k", "16"]), 0);
    // a wrong κ claim is a mathematical rejection
    assert_eq!(code(&["verify-rule", &sub, &rule, "--p", "1", "--k", "1"]), 1);
    let coded = ["--coding", &fixture("radius_large.coding")];
    let literal = fixture("radius_large_blank.rule");
    let large = fixture("radius_large.sub");
    let mut args = vec!["verify-rule", &large, &literal];
    args.extend(coded);
    assert_eq!(code(&args), 1);
    let onto = fixture("no_automorphism_factor.sub");
    assert_eq!(
        code(&["verify-rule", &fixture("no_automorphism.sub"), &fixture("orbit_factor.rule"), "--onto", &onto]),
        0
    );
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&["analyze", "/nonexistent/file.sub"]), 2);
    let bad = scratch("bad.sub", "a -> ab\nb -> b\n");
    assert_eq!(code(&["analyze", &bad]), 2);
    let unknown = scratch("unknown.sub", "a -> az\nb -> ba\n");
    assert_eq!(code(&["analyze", &unknown]), 2);
    assert_eq!(code(&["twist", &fixture("thue_morse.sub"), "--tau", "a"]), 2);
    assert_eq!(code(&["analyze", &fixture("thue_morse.sub"), "--replay", &bad]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn compress_json() {
    let out = run(&["--json", "compress", &fixture("thue_morse.sub"), "--k", "2"]);
    assert!(out.status.success());
    let c: CompressionView = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(c.blocks, ["ab", "ba"]);
}

#[test]
fn twist_by_the_table_involution() {
    let out = run(&["twist", &fixture("twisted_eta.sub"), "--tau", "e f g h a b c d"]);
    assert!(out.status.success());
    let twisted = Substitution::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let back = autoshift::compression::twist(&twisted, &[4, 5, 6, 7, 0, 1, 2, 3]).unwrap();
    assert_eq!(back, fixtures::substitution("twisted_eta").unwrap());
}

#[test]
fn minimize_replays() {
    let sub = fixture("theta_prime.sub");
    let coding = fixture("theta_prime.coding");
    let out = run(&["--json", "minimize", &sub, &coding]);
    assert!(out.status.success());
    let report: MinimizeReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.summary.power, 2);

    let recorded = scratch("minimize.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(code(&["minimize", &sub, &coding, "--replay", &recorded]), 0);

    // a tampered presentation no longer reproduces
    let mut p = report.presentation.clone();
    p.theta_star = fixtures::substitution("thue_morse").unwrap();
    let tampered = scratch("tampered.json", &serde_json::to_string(&p).unwrap());
    assert_eq!(code(&["minimize", &sub, &coding, "--replay", &tampered]), 1);
}

#[test]
fn decompose_reports_roots() {
    let out = run(&["decompose", &fixture("twisted.sub")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("decomposition: k = 3").count(), 2, "{text}");
    let none = run(&["decompose", &fixture("thue_morse.sub")]);
    assert!(String::from_utf8(none.stdout).unwrap().contains("no roots"));
}

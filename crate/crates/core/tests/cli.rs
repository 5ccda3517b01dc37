use std::io::Write;

use chromatic::cli::run;
use chromatic::verify::fixtures::fixture;

fn chromatic(args: &[&str]) -> chromatic::cli::Outcome {
    run(std::iter::once("chromatic").chain(args.iter().copied()))
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn build_dot_for_purple_twin() {
    let out = chromatic(&[
        "build",
        "--picture",
        "(0 (2 r b) r r b b)",
        "--format",
        "dot",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("graph dual {"));
    assert_eq!(out.stdout.matches("label=\"3\"").count(), 1);
    assert!(out.stdout.contains("v0 -- v0 [label=\"2\""));
}

#[test]
fn examples_list_has_five_names() {
    let out = chromatic(&["examples", "--list"]);
    assert_eq!(out.code, 0);
    let names: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(
        names,
        [
            "purple-twin",
            "black-twin",
            "three-children",
            "nested",
            "k33"
        ]
    );
}

#[test]
fn examples_run_matches_all() {
    let out = chromatic(&["examples", "--run"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(out.stdout.lines().filter(|l| l.contains(" ok ")).count(), 5);
}

#[test]
fn shared_roots_exit_one() {
    let f = temp_file(
        r#"{"p":7,"f1":{"factors":[{"z":"0","c":"1","n":2}]},"f2":{"factors":[{"z":"1","c":"p","n":1},{"z":"0","c":"1","n":1}]}}"#,
    );
    let out = chromatic(&["check", "--polynomials", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("share a root"), "{}", out.stderr);
    assert!(out.stderr.contains("f1[0]") && out.stderr.contains("f2[1]"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(chromatic(&["bogus"]).code, 2);
    assert_eq!(chromatic(&["build"]).code, 2);
    assert_eq!(
        chromatic(&["build", "--picture", "(0 r b)", "--polynomials", "x.json"]).code,
        2
    );
    assert_eq!(
        chromatic(&["build", "--picture", "(0 r b)", "--format", "png"]).code,
        2
    );
}

#[test]
fn domain_errors_exit_one() {
    let out = chromatic(&["build", "--picture", "(0 (0 r b) r)"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("error:"));
    let out = chromatic(&["build", "--picture", "/nonexistent/picture.txt"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("cannot read"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "build",
            "--picture",
            "(0 (2 (5 r r) (4 b b)) (3 r b))",
            "--format",
            "json",
        ][..],
        &[
            "classify",
            "--picture",
            "(0 (4 (1 b b b b) r r r) r r r b b b)",
            "--format",
            "json",
        ],
        &[
            "render",
            "--picture",
            "(0 (2 r r r b b b) (3 r r r r) (6 b b b))",
        ],
    ] {
        let a = chromatic(args);
        let b = chromatic(args);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a, b);
    }
}

#[test]
fn classify_json_lists_every_proper_cluster() {
    let out = chromatic(&[
        "classify",
        "--picture",
        "(0 (2 (5 r r) (4 b b)) (3 r b))",
        "--format",
        "json",
    ]);
    let rows: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["cluster"], "R");
    assert_eq!(rows[0]["principal"], true);
    assert_eq!(rows[0]["colour"], "purple");
}

#[test]
fn frobenius_from_polynomials() {
    let text = fixture("purple-twin").unwrap().polynomials_for(5).unwrap();
    let f = temp_file(&text);
    let out = chromatic(&[
        "frobenius",
        "--polynomials",
        f.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(out.stdout.contains("-1"), "{v}");
    // The prime can be overridden: 2 is a square mod 7.
    let out = chromatic(&[
        "frobenius",
        "--polynomials",
        f.path().to_str().unwrap(),
        "--p",
        "7",
    ]);
    assert!(out.stdout.contains("L_s1       -> L_s1"), "{}", out.stdout);
}

#[test]
fn frobenius_with_epsilon_and_permutation_files() {
    let eps = temp_file(r#"{"s1":{"1":1,"2":-1,"h":-1}}"#);
    let out = chromatic(&[
        "frobenius",
        "--picture",
        "(0 (3 r r) r b b b)",
        "--eps",
        eps.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("L_s1+      -> L_s1-"), "{}", out.stdout);
    let perm = temp_file(r#"{"s1":"s2","s2":"s1"}"#);
    let out = chromatic(&[
        "frobenius",
        "--picture",
        "(0 (2 r r r b b b) (3 r r r r) (6 b b b))",
        "--perm",
        perm.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, 1, "swapping non-isomorphic clusters must fail");
    assert!(out.stderr.contains("not an automorphism"), "{}", out.stderr);
}

#[test]
fn check_reports_certificate_and_scale() {
    let text = fixture("black-twin").unwrap().polynomials_for(7).unwrap();
    let out = chromatic(&["check", "--polynomials", &text, "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("precision certificate"));
    let out = chromatic(&[
        "build",
        "--picture",
        "(0 (2 r b) r r b b)",
        "--scale",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["edges"][0]["length"], "6");
}

#[test]
fn wild_prime_is_unsupported() {
    let text = fixture("black-twin").unwrap().polynomials_for(3).unwrap();
    let out = chromatic(&["build", "--polynomials", &text]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("wild"), "{}", out.stderr);
}

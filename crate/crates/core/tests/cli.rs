use std::path::{Path, PathBuf};
use std::process::Command;

use mvk::cli::{run, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE};
use mvk::plot::{grey_fraction, svg_vertices};
use mvk::Rational;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn mvk(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mvk").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn info_on_algebra() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"kind":"chain_product","denominators":[2,3]}"#);
    let r = mvk(&["info", s(&a)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.starts_with("carrier 12, booleans 4, primes 2"), "{}", r.out);

    let r = mvk(&["--format", "object-notation", "info", s(&a)]);
    let v = json(&r.out);
    assert_eq!(v["kind"], "info");
    assert_eq!(v["carrier"], 12);
    assert_eq!(v["booleans"], 4);
    assert_eq!(v["primes"], 2);
}

#[test]
fn info_on_pl_and_lgroup() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"kind":"pl1","points":[["0","0"],["1/3","0"],["2/3","1"],["1","1"]]}"#,
    );
    let r = mvk(&["info", s(&f)]);
    assert_eq!(r.out.trim(), "pieces 3, breakpoints 0/1 1/3 2/3 1/1, mcnaughton yes");

    let g = write(&dir, "g.json", r#"{"kind":"lgroup_element","unit":[2,3],"coords":[3,2]}"#);
    let v = json(&mvk(&["--format", "object-notation", "info", s(&g)]).out);
    assert_eq!(v["good_sequence"], serde_json::json!(["(1,2/3)", "(1/2,0)"]));
}

#[test]
fn fixpoint_traces() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"kind":"element","values":["2/5"]}"#);
    let r = mvk(&["fixpoint", s(&a)]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out.trim(), "2/5 → 1/5 → 0; n=2");

    let b = write(&dir, "b.json", r#"{"kind":"element","values":["1/2","1/3"]}"#);
    assert_eq!(mvk(&["fixpoint", s(&b)]).out.trim(), "(1/2,1/3) → (1/2,0); n=1");

    let v = json(&mvk(&["--format", "object-notation", "fixpoint", s(&a)]).out);
    assert_eq!(v["kind"], "game_trace");
    assert_eq!(v["n"], 2);
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
}

#[test]
fn center_reports_singletons() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"kind":"element","values":["1/2","1/3"]}"#);
    let r = mvk(&["center", s(&a)]);
    assert!(r.out.starts_with("C_p = {(0,0),(1,0)}, non-singleton"), "{}", r.out);

    let b = write(&dir, "b.json", r#"{"kind":"element","values":["1/3"]}"#);
    assert!(mvk(&["center", s(&b)]).out.starts_with("C_p = {0}, singleton"));

    let v = json(&mvk(&["--format", "object-notation", "center", s(&a)]).out);
    assert_eq!(v["kind"], "central_cone");
    assert_eq!(v["singleton"], false);
    assert_eq!(v["members"].as_array().unwrap().len(), 2);
}

#[test]
fn order_compares_across_inferred_algebras() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", r#"{"kind":"element","values":["1/4"]}"#);
    let y = write(&dir, "y.json", r#"{"kind":"element","values":["1/3"]}"#);
    let r = mvk(&["order", s(&x), s(&y)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("⊑: yes"), "{}", r.out);
    let r = mvk(&["order", s(&y), s(&x)]);
    assert!(r.out.contains("⊑: no"), "{}", r.out);

    let v = json(&mvk(&["--format", "object-notation", "order", s(&x), s(&y)]).out);
    assert_eq!(v["kind"], "order");
}

#[test]
fn order_rejects_mismatched_algebras() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", r#"{"kind":"element","values":["1/2"],"denominators":[2]}"#);
    let y = write(&dir, "y.json", r#"{"kind":"element","values":["1/3"],"denominators":[3]}"#);
    assert_eq!(mvk(&["order", s(&x), s(&y)]).code, EXIT_USAGE);
}

#[test]
fn bad_documents_exit_with_usage() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "z.json", r#"{"kind":"element","values":["3/0"]}"#);
    let r = mvk(&["fixpoint", s(&zero)]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("positive denominator"), "{}", r.err);

    let broken = write(&dir, "b.json", r#"{"kind":"element","values":["#);
    let r = mvk(&["info", s(&broken)]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("byte"), "{}", r.err);

    let missing = dir.path().join("missing.json");
    assert_eq!(mvk(&["info", s(&missing)]).code, EXIT_USAGE);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(mvk(&["verify", "no-such-suite"]).code, EXIT_USAGE);
    assert_eq!(mvk(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(mvk(&["verify", "sigma", "--max-carrier", "1"]).code, EXIT_USAGE);
    let r = mvk(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("verify"));
}

#[test]
fn verify_passes_and_reports() {
    let r = mvk(&["verify", "sigma-closed-form"]);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.out, r.err);
    assert!(r.out.contains("sigma-closed-form: pass"), "{}", r.out);

    let r = mvk(&["--format", "object-notation", "verify", "mv-axioms", "--max-carrier", "20"]);
    assert_eq!(r.code, EXIT_OK);
    let v = json(&r.out);
    let first = if v.is_array() { v[0].clone() } else { v };
    assert_eq!(first["kind"], "suite_report");
}

#[test]
fn verify_counterexample_exit_code() {
    let r = mvk(&["verify", "mv-axioms", "--max-carrier", "20", "--mutation", "oplus-bound"]);
    assert_eq!(r.code, EXIT_COUNTEREXAMPLE, "{}", r.out);
    assert!(r.out.contains("mv-axioms: FAIL"), "{}", r.out);
}

#[test]
fn svg_plot_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    assert_eq!(mvk(&["plot", "sigma", "--out", s(&a)]).code, EXIT_OK);
    assert_eq!(mvk(&["plot", "sigma", "--out", s(&b)]).code, EXIT_OK);
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    let vs = svg_vertices(std::str::from_utf8(&sa).unwrap()).unwrap();
    let xs: Vec<Rational> = vs.iter().map(|v| v.0.clone()).collect();
    assert_eq!(
        xs,
        vec![Rational::zero(), Rational::frac(1, 3), Rational::frac(2, 3), Rational::one()]
    );
}

#[test]
fn plots_from_documents_and_terms() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"kind":"pl1","points":[["0","0"],["1","1"]]}"#);
    let out = dir.path().join("f.ppm");
    let r = mvk(&["plot", s(&f), "--out", s(&out), "--grid", "32", "--term", "sigma(X)"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(std::fs::read(&out).unwrap().starts_with(b"P6\n32 32\n255\n"));

    let d = dir.path().join("d.ppm");
    let v = json(&mvk(&["--format", "object-notation", "plot", "free2:dist", "--out", s(&d), "--grid", "8"]).out);
    assert_eq!(v["kind"], "plot");
    assert!(d.exists());
}

#[test]
fn plot_rejects_bad_requests() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("x.ppm");
    assert_eq!(mvk(&["plot", "sigma", "--out", s(&p), "--grid", "1"]).code, EXIT_USAGE);
    assert_eq!(mvk(&["plot", "free2:x", "--out", s(&dir.path().join("x.svg"))]).code, EXIT_USAGE);
    assert_eq!(mvk(&["plot", "free2:nope", "--out", s(&p)]).code, EXIT_USAGE);
    assert_eq!(mvk(&["plot", "sigma", "--out", s(&dir.path().join("x.png"))]).code, EXIT_USAGE);
    let unwritable = dir.path().join("no/such/dir/x.svg");
    let r = mvk(&["plot", "sigma", "--out", s(&unwritable)]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("cannot write"), "{}", r.err);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mvk");
    let ok = Command::new(bin).args(["verify", "sigma-closed-form"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin)
        .args(["verify", "sigma", "--mutation", "below-flip", "--max-carrier", "20"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_COUNTEREXAMPLE));
    let usage = Command::new(bin).arg("verify").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    assert!(!usage.stderr.is_empty());
}

#[test]
fn documented_order_examples() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", r#"{"kind":"element","values":["1","0"]}"#);
    let y = write(&dir, "y.json", r#"{"kind":"element","values":["1/2","1/3"]}"#);
    assert!(mvk(&["order", s(&x), s(&y)]).out.starts_with("⊑: yes"));

    let r = mvk(&["order", s(&y), s(&y)]);
    for line in ["⊑: yes", "⊒: yes", "≤: yes", "≥: yes", "distance: (0,0)"] {
        assert!(r.out.contains(line), "{}", r.out);
    }

    let a = write(&dir, "a.json", r#"{"kind":"element","values":["2/3"],"denominators":[3]}"#);
    let b = write(&dir, "b.json", r#"{"kind":"element","values":["1/3"],"denominators":[3]}"#);
    assert!(mvk(&["order", s(&a), s(&b)]).out.starts_with("⊑: no"));
}

#[test]
fn boolean_elements_are_fixed() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", r#"{"kind":"element","values":["1","0"],"denominators":[2,3]}"#);
    assert!(mvk(&["fixpoint", s(&b)]).out.trim().ends_with("n=0"));
    assert!(mvk(&["center", s(&b)]).out.starts_with("C_p = {(1,0)}, singleton"));
}

#[test]
fn partial_order_reports_triples() {
    let r = mvk(&["verify", "partial-order", "--max-carrier", "50"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.starts_with("partial-order: pass"), "{}", r.out);
    assert!(r.out.contains("triples"), "{}", r.out);
}

#[test]
fn constant_plot_is_horizontal() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", r#"{"kind":"pl1","points":[["0","1/2"],["1","1/2"]]}"#);
    let out = dir.path().join("c.svg");
    assert_eq!(mvk(&["plot", s(&c), "--out", s(&out)]).code, EXIT_OK);
    let vs = svg_vertices(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(vs.iter().all(|v| v.1 == Rational::half()));
}

#[test]
fn density_plot_sharpens_under_iteration() {
    let dir = TempDir::new().unwrap();
    let mut fractions = Vec::new();
    for (i, t) in ["X", "sigma(X)", "sigma(sigma(X))", "sigma(sigma(sigma(X)))"].iter().enumerate() {
        let out = dir.path().join(format!("d{i}.ppm"));
        let r = mvk(&["plot", "free2:sum", "--out", s(&out), "--grid", "64", "--term", t]);
        assert_eq!(r.code, EXIT_OK, "{}", r.err);
        fractions.push(grey_fraction(&std::fs::read(&out).unwrap()));
    }
    assert!(fractions.windows(2).all(|w| w[1] < w[0]), "{fractions:?}");
}

#[test]
fn full_battery_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_mvk"))
        .args(["verify", "all", "--max-carrier", "200"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK), "{text}");
    assert_eq!(text.matches(": pass").count(), 9, "{text}");
}

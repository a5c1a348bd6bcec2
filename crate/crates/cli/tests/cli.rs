use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mpres_cli::{FuzzReport, MatrixCheck, ReportDocument, TransformSummary, WitnessReport, WitnessStatus};
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn mpres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpres")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn classify_json(name: &str) -> ReportDocument {
    let o = mpres(&["--format", "json", "classify", path_str(&fixture(name))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_bounded_metric_transform() {
    let doc = classify_json("x_over_1px.fn");
    let r = &doc.report;
    assert!(r.in_m.is_proven() && r.in_u.is_proven() && r.in_um.is_proven());
    assert!(r.in_mu.is_refuted());
    assert_eq!(doc.timing_ms, None);
    assert_eq!(doc.continuity, r.continuity);
}

#[test]
fn classify_square_gives_line_witness() {
    let doc = classify_json("xsq.fn");
    assert!(doc.report.in_u.is_proven());
    let w = doc.report.in_m.realized().expect("M witness");
    let t = w.triplet().unwrap();
    assert_eq!((t.a.to_string(), t.b.to_string(), t.c.to_string()), ("2".into(), "1".into(), "1".into()));
    assert!(doc.witnesses.iter().any(|cw| cw.class == "M" && cw.witness == *w));
}

#[test]
fn report_json_round_trips_and_is_deterministic() {
    let f = fixture("ex55.fn");
    let args = ["--format", "json", "classify", path_str(&f)];
    let a = mpres(&args);
    let b = mpres(&args);
    assert_eq!(a.stdout, b.stdout);
    let doc: ReportDocument = serde_json::from_slice(&a.stdout).unwrap();
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again.as_bytes(), &a.stdout[..]);
    let src = fs::read(fixture("ex55.fn")).unwrap();
    assert_eq!(doc.source_sha256, mpres_cli::report::sha256_hex(&src));
    assert!(stdout(&a).contains("\"lhs\": \"1\""));
}

#[test]
fn timing_is_opt_in() {
    let o = mpres(&["--format", "json", "classify", "--timing", path_str(&fixture("min1x.fn"))]);
    let doc: ReportDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc.timing_ms.is_some());
}

#[test]
fn classify_input_errors_exit_2() {
    assert_eq!(code(&mpres(&["classify", "missing.fn"])), 2);
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.fn", "piecewise\n[0,inf): x +* 2\n");
    let o = mpres(&["classify", path_str(&bad)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(":2:13:"), "{err}");
    let gap = write(&dir, "gap.fn", "piecewise\n[0,1): x\n(1,inf): 1\n");
    assert_eq!(code(&mpres(&["classify", path_str(&gap)])), 2);
}

#[test]
fn check_matrix_exit_codes() {
    let dir = TempDir::new().unwrap();
    let eq = write(&dir, "eq.csv", "0,1,1\n1,0,1\n1,1,0\n");
    assert_eq!(code(&mpres(&["check-matrix", path_str(&eq), "--ultra"])), 0);

    let line = write(&dir, "line.csv", "0,1,2\n1,0,1\n2,1,0\n");
    assert_eq!(code(&mpres(&["check-matrix", path_str(&line)])), 0);
    let o = mpres(&["--format", "json", "check-matrix", path_str(&line), "--ultra"]);
    assert_eq!(code(&o), 1);
    let c: MatrixCheck = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(c.violation.unwrap().axiom, mpres_core::finspace::Axiom::U3);

    let img = write(&dir, "img.csv", "0,1,4\n1,0,1\n4,1,0\n");
    let o = mpres(&["check-matrix", path_str(&img)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("M3 at (1,3) via 2: 4 > 2"), "{}", stdout(&o));

    let zero = write(&dir, "zero.csv", "0,0\n0,0\n");
    assert_eq!(code(&mpres(&["check-matrix", path_str(&zero)])), 1);

    for (name, text) in [
        ("asym.csv", "0,2,1\n1,0,1\n1,1,0\n"),
        ("diag.csv", "1,1\n1,0\n"),
        ("neg.csv", "0,-1\n-1,0\n"),
        ("ragged.csv", "0,1\n1\n"),
        ("junk.csv", "0,a\na,0\n"),
    ] {
        let p = write(&dir, name, text);
        assert_eq!(code(&mpres(&["check-matrix", path_str(&p)])), 2, "{name}");
    }
}

#[test]
fn transform_writes_image() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.csv", "0,3/2,2,5\n3/2,0,1,4\n2,1,0,7/2\n5,4,7/2,0\n");
    let out = dir.path().join("out.csv");
    let o = mpres(&["transform", path_str(&fixture("cvariant_1.fn")), path_str(&d), "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), "0,1,1,1\n1,0,1,1\n1,1,0,1\n1,1,1,0\n");
    assert_eq!(code(&mpres(&["check-matrix", path_str(&out), "--ultra"])), 0);

    let line = write(&dir, "line.csv", "0,1,2\n1,0,1\n2,1,0\n");
    let o = mpres(&["--format", "json", "transform", path_str(&fixture("xsq.fn")), path_str(&line), "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let s: TransformSummary = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(s.metric.unwrap().axiom, mpres_core::finspace::Axiom::M3);

    let id = write(&dir, "id.fn", "piecewise\n[0,inf): x\n");
    let o = mpres(&["transform", path_str(&id), path_str(&d), "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&d).unwrap());

    let shifted = write(&dir, "shift.fn", "piecewise\n[0,inf): x + 1\n");
    let o = mpres(&["transform", path_str(&shifted), path_str(&d), "--out", path_str(&out)]);
    assert_eq!(code(&o), 1);
    let o = mpres(&["transform", path_str(&id), "missing.csv", "--out", path_str(&out)]);
    assert_eq!(code(&o), 2);
}

fn witness(name: &str, class: &str, extra: &[&str]) -> (i32, WitnessReport, String) {
    let f = fixture(name);
    let mut args = vec!["--format", "json", "witness", path_str(&f), "--class", class];
    args.extend_from_slice(extra);
    let o = mpres(&args);
    let text = {
        let mut a = vec!["witness", path_str(&f), "--class", class];
        a.extend_from_slice(extra);
        stdout(&mpres(&a))
    };
    (code(&o), serde_json::from_slice(&o.stdout).unwrap(), text)
}

#[test]
fn witness_for_square_is_a_line() {
    let (c, r, text) = witness("xsq.fn", "M", &[]);
    assert_eq!(c, 1);
    assert_eq!(r.status, WitnessStatus::Refuted);
    let w = r.witness.unwrap();
    assert_eq!(w.realized.to_csv(), "0,1,2\n1,0,1\n2,1,0\n");
    assert_eq!(r.image.unwrap()[0][2], "4");
    assert!(text.contains("realized space:"));
}

#[test]
fn witness_member_and_unknown_are_distinguished() {
    let (c, r, text) = witness("ex55.fn", "UM", &[]);
    assert_eq!((c, r.status), (0, WitnessStatus::Member));
    assert!(text.contains("member (proven)"));

    let dir = TempDir::new().unwrap();
    // not affine, no sufficient condition applies, and the grid finds nothing
    let f = write(&dir, "hump.fn", "piecewise\n[0,inf): (x^2 + x) / (x^2 + 1)\n");
    let o = mpres(&["witness", path_str(&f), "--class", "M", "--budget", "0"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("no witness found (unknown)"), "{out}");
    assert!(!out.contains("member (proven)"));
}

#[test]
fn witness_for_low_plateau_is_a_doubling_pair() {
    let (c, r, _) = witness("cvariant_0.4.fn", "UM", &[]);
    assert_eq!(c, 1);
    let w = r.witness.unwrap();
    assert_eq!(w.kind, mpres_core::WitnessKind::DoublingPair);
    match w.payload {
        mpres_core::search::Payload::Pair(p) => assert_eq!((p.a.to_string(), p.b.to_string()), ("1".into(), "2".into())),
        other => panic!("{other:?}"),
    }
}

#[test]
fn witness_seed_and_budget_are_accepted() {
    let (c, r, _) = witness("x_over_1px2.fn", "M", &["--seed", "7", "--budget", "50"]);
    assert_eq!(c, 1);
    assert!(r.witness.is_some());
    assert_eq!(code(&mpres(&["witness", path_str(&fixture("xsq.fn")), "--class", "X"])), 2);
}

fn fuzz(name: &str, extra: &[&str]) -> (i32, FuzzReport) {
    let f = fixture(name);
    let mut args = vec!["--format", "json", "fuzz", path_str(&f), "--spaces", "200"];
    args.extend_from_slice(extra);
    let o = mpres(&args);
    (code(&o), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn fuzz_runs_are_consistent() {
    let (c, r) = fuzz("x_over_1px.fn", &["--seed", "1"]);
    assert_eq!(c, 0);
    assert_eq!(r.result.checked, 200);
    assert!(r.result.disagreements.is_empty());

    let (c, r) = fuzz("step.fn", &[]);
    assert_eq!(c, 0);
    assert_eq!(r.result.two_valued, 200);

    let (c, r) = fuzz("xsq.fn", &[]);
    assert_eq!(c, 0);
    assert!(!r.claims.contains(&"M".to_string()));
    assert!(r.claims.contains(&"U".to_string()));
}

#[test]
fn fuzz_is_deterministic_and_validates_arguments() {
    let f = fixture("g65.fn");
    let args = ["fuzz", path_str(&f), "--spaces", "30", "--seed", "9"];
    assert_eq!(mpres(&args).stdout, mpres(&args).stdout);
    assert_eq!(code(&mpres(&["fuzz", path_str(&f), "--spaces", "0"])), 2);
    assert_eq!(code(&mpres(&["fuzz", "missing.fn", "--spaces", "3"])), 2);
}

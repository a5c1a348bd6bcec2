use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::time::Instant;

use mpres_core::classifier::{classify_m_with, classify_mu, classify_u, classify_um};
use mpres_core::finspace::{first_violation, image_entries, transform_space, FinspaceError};
use mpres_core::search::{cross_validate, CrossValidation};
use mpres_core::{classify, parse_function, AxiomViolation, DistanceMatrix, Mode, PiecewiseFunction, Status, Witness};
use serde::{Deserialize, Serialize};

use crate::args::{Class, Format};
use crate::report::{class_verdicts, ReportDocument};

/// Unreadable or malformed input; exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// What a command prints and how it exits.
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

fn emit<T: Serialize>(format: Format, code: u8, doc: &T, text: String) -> Outcome {
    let stdout = match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(doc).expect("report serializes") + "\n",
    };
    Outcome { code, stdout }
}

fn read(path: &Path) -> Result<Vec<u8>, InputError> {
    fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_function(path: &Path) -> Result<(Vec<u8>, PiecewiseFunction), InputError> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| InputError(format!("{}: not UTF-8", path.display())))?;
    let f = parse_function(&text).map_err(|e| InputError(format!("{}:{e}", path.display())))?;
    Ok((bytes, f))
}

fn load_matrix(path: &Path) -> Result<DistanceMatrix, InputError> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes).map_err(|_| InputError(format!("{}: not UTF-8", path.display())))?;
    DistanceMatrix::from_csv(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn rows_csv(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join(",") + "\n").collect()
}

fn string_rows(d: &[Vec<mpres_core::Rational>]) -> Vec<Vec<String>> {
    d.iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect()
}

// ---------------------------------------------------------------------------

pub fn classify_cmd(path: &Path, timing: bool, format: Format) -> Result<Outcome, InputError> {
    let (bytes, f) = load_function(path)?;
    let start = Instant::now();
    let report = classify(&f);
    let elapsed = timing.then(|| start.elapsed().as_millis() as u64);
    let doc = ReportDocument::new(&bytes, report, elapsed);
    Ok(emit(format, 0, &doc, doc.to_text()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixCheck {
    pub mode: Mode,
    pub n: usize,
    pub holds: bool,
    pub violation: Option<AxiomViolation>,
}

pub fn check_matrix_cmd(path: &Path, ultra: bool, format: Format) -> Result<Outcome, InputError> {
    let d = load_matrix(path)?;
    let mode = if ultra { Mode::Ultrametric } else { Mode::Metric };
    let violation = first_violation(d.rows(), mode);
    let text = match &violation {
        None => format!("{mode}: holds\n"),
        Some(v) => format!("{mode}: fails: {v}\n"),
    };
    let doc = MatrixCheck {
        mode,
        n: d.n(),
        holds: violation.is_none(),
        violation,
    };
    Ok(emit(format, if doc.holds { 0 } else { 1 }, &doc, text))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformSummary {
    pub n: usize,
    pub metric: Option<AxiomViolation>,
    pub ultrametric: Option<AxiomViolation>,
}

pub fn transform_cmd(fn_path: &Path, csv: &Path, out: &Path, format: Format) -> Result<Outcome, InputError> {
    let (_, f) = load_function(fn_path)?;
    let d = load_matrix(csv)?;
    let image = match transform_space(&d, &f) {
        Ok(image) => image,
        Err(e @ FinspaceError::NonAmenableDiagonal { .. }) => {
            let msg = format!("{e}\n");
            return Ok(emit(format, 1, &serde_json::json!({ "error": e.to_string() }), msg));
        }
        Err(e) => return Err(InputError(e.to_string())),
    };
    fs::write(out, image.to_csv()).map_err(|e| InputError(format!("{}: {e}", out.display())))?;
    let doc = TransformSummary {
        n: image.n(),
        metric: first_violation(image.rows(), Mode::Metric),
        ultrametric: first_violation(image.rows(), Mode::Ultrametric),
    };
    let mut text = format!("wrote {}\n", out.display());
    for (mode, v) in [(Mode::Metric, &doc.metric), (Mode::Ultrametric, &doc.ultrametric)] {
        match v {
            None => writeln!(text, "{mode}: holds").unwrap(),
            Some(v) => writeln!(text, "{mode}: fails: {v}").unwrap(),
        }
    }
    Ok(emit(format, 0, &doc, text))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    Member,
    Refuted,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub class: String,
    pub status: WitnessStatus,
    pub rule: String,
    pub witness: Option<Witness>,
    /// Entrywise image of the realized space.
    pub image: Option<Vec<Vec<String>>>,
}

pub fn witness_cmd(path: &Path, class: Class, seed: u64, budget: usize, format: Format) -> Result<Outcome, InputError> {
    let (_, f) = load_function(path)?;
    let verdict = match class {
        Class::M => classify_m_with(&f, budget, seed),
        Class::U => classify_u(&f),
        Class::Mu => classify_mu(&f),
        Class::Um => classify_um(&f),
    };
    let label = class.label();
    let witness = verdict.realized().cloned();
    let image = witness.as_ref().map(|w| string_rows(&image_entries(&w.realized, &f)));
    let (status, code) = match verdict.status {
        Status::Proven => (WitnessStatus::Member, 0),
        Status::Refuted => (WitnessStatus::Refuted, 1),
        Status::Unknown => (WitnessStatus::Unknown, 0),
    };
    let mut text = String::new();
    match status {
        WitnessStatus::Member => writeln!(text, "{label}: member (proven) by {}", verdict.rule).unwrap(),
        WitnessStatus::Unknown => writeln!(text, "{label}: no witness found (unknown): {}", verdict.rule).unwrap(),
        WitnessStatus::Refuted => {
            writeln!(text, "{label}: not a member ({})", verdict.rule).unwrap();
            match (&witness, &image) {
                (Some(w), Some(image)) => {
                    writeln!(text, "witness: {w}").unwrap();
                    writeln!(text, "realized space:").unwrap();
                    text.push_str(&w.realized.to_csv());
                    writeln!(text, "image:").unwrap();
                    text.push_str(&rows_csv(image));
                }
                _ => writeln!(text, "no finite witness: {:?}", verdict.witness).unwrap(),
            }
        }
    }
    let doc = WitnessReport {
        class: label.to_string(),
        status,
        rule: verdict.rule,
        witness,
        image,
    };
    Ok(emit(format, code, &doc, text))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    /// Classes proven for the function; only these are checked.
    pub claims: Vec<String>,
    pub result: CrossValidation,
}

pub fn fuzz_cmd(path: &Path, spaces: u64, seed: u64, format: Format) -> Result<Outcome, InputError> {
    let (_, f) = load_function(path)?;
    let report = classify(&f);
    let claims = class_verdicts(&report)
        .iter()
        .filter(|(_, v)| v.is_proven())
        .map(|(c, _)| c.to_string())
        .collect::<Vec<_>>();
    let result = cross_validate(&f, &report, spaces as usize, seed);
    let n = result.checked;
    let mut text = String::new();
    let claimed = if claims.is_empty() { "none".to_string() } else { claims.join(", ") };
    writeln!(text, "claims checked: {claimed}").unwrap();
    writeln!(text, "spaces: {n} ultrametric, {n} metric (seed {seed})").unwrap();
    writeln!(text, "ultrametric images that are ultrametric: {}/{n}", result.ultra_to_ultra).unwrap();
    writeln!(text, "ultrametric images that are metric: {}/{n}", result.ultra_to_metric).unwrap();
    writeln!(text, "metric images that are metric: {}/{n}", result.metric_to_metric).unwrap();
    writeln!(text, "metric images that are ultrametric: {}/{n}", result.metric_to_ultra).unwrap();
    writeln!(text, "metric images with a single nonzero value: {}/{n}", result.two_valued).unwrap();
    for d in &result.disagreements {
        writeln!(text, "disagreement with {}: {}", d.class, d.detail).unwrap();
        if let Some(v) = &d.violation {
            writeln!(text, "  {v}").unwrap();
        }
        text.push_str(&d.space.to_csv());
    }
    let code = if result.disagreements.is_empty() { 0 } else { 1 };
    let doc = FuzzReport { seed, claims, result };
    Ok(emit(format, code, &doc, text))
}

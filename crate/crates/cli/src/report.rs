use std::fmt::Write;

use mpres_core::{ClassReport, ContinuityProfile, Verdict, Witness};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A realized witness together with the class it refutes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitness {
    pub class: String,
    pub witness: Witness,
}

/// Everything `classify` prints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub source_sha256: String,
    pub report: ClassReport,
    pub continuity: ContinuityProfile,
    pub witnesses: Vec<ClassWitness>,
    /// Only set with `--timing`, so that default output is reproducible.
    pub timing_ms: Option<u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn class_verdicts(report: &ClassReport) -> [(&'static str, &Verdict); 4] {
    [("U", &report.in_u), ("M", &report.in_m), ("MU", &report.in_mu), ("UM", &report.in_um)]
}

impl ReportDocument {
    pub fn new(source: &[u8], report: ClassReport, timing_ms: Option<u64>) -> Self {
        let witnesses = class_verdicts(&report)
            .iter()
            .filter_map(|(class, v)| {
                v.realized().map(|w| ClassWitness {
                    class: class.to_string(),
                    witness: w.clone(),
                })
            })
            .collect();
        ReportDocument {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            source_sha256: sha256_hex(source),
            continuity: report.continuity.clone(),
            report,
            witnesses,
            timing_ms,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let r = &self.report;
        writeln!(s, "mpres {}", self.tool_version).unwrap();
        writeln!(s, "source sha256: {}", self.source_sha256).unwrap();
        writeln!(s, "amenable: {}", r.amenable).unwrap();
        for (class, v) in class_verdicts(r) {
            writeln!(s, "in_{class}: {v}").unwrap();
            if let Some(w) = v.realized() {
                writeln!(s, "  witness: {w}").unwrap();
            }
        }
        let c = &self.continuity;
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(
            s,
            "continuity: at 0 {}, everywhere {}, uniformly {}",
            yn(c.at_zero),
            yn(c.everywhere),
            yn(c.uniformly)
        )
        .unwrap();
        match &c.inf_positive {
            Some(v) => writeln!(s, "inf over (0, inf): {v}").unwrap(),
            None => writeln!(s, "inf over (0, inf): unresolved").unwrap(),
        }
        if c.discontinuities.is_empty() {
            writeln!(s, "discontinuities: none").unwrap();
        } else {
            let xs: Vec<String> = c.discontinuities.iter().map(|x| x.to_string()).collect();
            writeln!(s, "discontinuities: {}", xs.join(", ")).unwrap();
        }
        for note in &c.consistency_notes {
            writeln!(s, "inconsistency: {note}").unwrap();
        }
        if let Some(ms) = self.timing_ms {
            writeln!(s, "time: {ms} ms").unwrap();
        }
        s
    }
}

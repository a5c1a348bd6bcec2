//! Three-valued verdicts and the evidence attached to them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::{ExtRational, Rational};
use crate::finspace::AxiomViolation;
use crate::search::Witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Proven,
    Refuted,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proven => "Proven",
            Status::Refuted => "Refuted",
            Status::Unknown => "Unknown",
        })
    }
}

/// Two arguments and their images; which inequality they break depends
/// on the property (e.g. `a < b` with `fa > fb` for monotonicity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    #[serde(with = "crate::rational::serde_q")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub fa: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub fb: Rational,
}

/// What a verdict rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "evidence", rename_all = "snake_case")]
pub enum Evidence {
    Pair(PairWitness),
    /// `f(x) = fx` at a single point, e.g. a zero of `f` at `x > 0` or
    /// `f(0) != 0`.
    Point {
        #[serde(with = "crate::rational::serde_q")]
        x: Rational,
        #[serde(with = "crate::rational::serde_q")]
        fx: Rational,
    },
    /// `f` vanishes at an irrational point of the open interval `(lo, hi)`.
    IrrationalZero {
        #[serde(with = "crate::rational::serde_q")]
        lo: Rational,
        #[serde(with = "crate::rational::serde_q")]
        hi: Rational,
    },
    /// One-sided limit of `f` from the right at `at`.
    Limit {
        #[serde(with = "crate::rational::serde_q")]
        at: Rational,
        value: ExtRational,
    },
    /// `f((1-t) x1 + t x2) < (1-t) f(x1) + t f(x2)`.
    Chord {
        #[serde(with = "crate::rational::serde_q")]
        x1: Rational,
        #[serde(with = "crate::rational::serde_q")]
        x2: Rational,
        #[serde(with = "crate::rational::serde_q")]
        t: Rational,
        #[serde(with = "crate::rational::serde_q")]
        f_mid: Rational,
        #[serde(with = "crate::rational::serde_q")]
        chord: Rational,
    },
    /// `f(a + b) > f(a) + f(b)`.
    Sum {
        #[serde(with = "crate::rational::serde_q")]
        a: Rational,
        #[serde(with = "crate::rational::serde_q")]
        b: Rational,
        #[serde(with = "crate::rational::serde_q")]
        fa: Rational,
        #[serde(with = "crate::rational::serde_q")]
        fb: Rational,
        #[serde(with = "crate::rational::serde_q")]
        fab: Rational,
    },
    /// Infimum and supremum over `(0, inf)`.
    Bounds { inf: ExtRational, sup: ExtRational },
    /// A counterexample realized as a finite space.
    Realized(Box<Witness>),
    /// The first violated axiom of a distance matrix.
    Axiom(AxiomViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    /// Names the decision procedure, sufficient condition or search that
    /// produced the status.
    pub rule: String,
    pub witness: Option<Evidence>,
    /// A number certified alongside the verdict: `v` for tight bounds,
    /// the constant `c` for constancy on `(0, inf)`.
    #[serde(with = "crate::rational::serde_q::opt", default)]
    pub value: Option<Rational>,
}

impl Verdict {
    pub fn proven(rule: impl Into<String>) -> Self {
        Verdict {
            status: Status::Proven,
            rule: rule.into(),
            witness: None,
            value: None,
        }
    }

    pub fn refuted(rule: impl Into<String>, witness: Evidence) -> Self {
        Verdict {
            status: Status::Refuted,
            rule: rule.into(),
            witness: Some(witness),
            value: None,
        }
    }

    pub fn unknown(rule: impl Into<String>) -> Self {
        Verdict {
            status: Status::Unknown,
            rule: rule.into(),
            witness: None,
            value: None,
        }
    }

    pub fn with_value(mut self, v: Rational) -> Self {
        self.value = Some(v);
        self
    }

    pub fn is_proven(&self) -> bool {
        self.status == Status::Proven
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }

    /// The realized witness, if the evidence is one.
    pub fn realized(&self) -> Option<&Witness> {
        match &self.witness {
            Some(Evidence::Realized(w)) => Some(w),
            _ => None,
        }
    }

    pub fn violation(&self) -> Option<&AxiomViolation> {
        match &self.witness {
            Some(Evidence::Axiom(v)) => Some(v),
            _ => None,
        }
    }

    pub fn pair(&self) -> Option<&PairWitness> {
        match &self.witness {
            Some(Evidence::Pair(p)) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.status, self.rule)?;
        if let Some(v) = &self.value {
            write!(f, " [value {v}]")?;
        }
        Ok(())
    }
}

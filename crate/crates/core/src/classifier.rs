//! Membership in the four preservation classes:
//!
//! * `U`: `f o d` is an ultrametric for every ultrametric `d`,
//! * `M`: `f o d` is a metric for every metric `d`,
//! * `MU`: `f o d` is an ultrametric for every metric `d`,
//! * `UM`: `f o d` is a metric for every ultrametric `d`.
//!
//! `U`, `MU` and `UM` are decided exactly through their characterizations.
//! `M` is exact for piecewise-affine functions and otherwise relies on
//! sufficient conditions and witness searches.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::affine;
use crate::properties::{
    global_continuity_report, infimum_positive, is_amenable, is_concave, is_constant_on_positive, is_continuous_at_zero,
    is_increasing, is_subadditive, is_tightly_bounded, satisfies_doubling,
};
use crate::pwfun::PiecewiseFunction;
use crate::rational::{ExtRational, Rational};
use crate::search::{
    self, chain_pair, doubling_witness, monotone_witness, nonconstant_witness, triangle_witness, zero_witness, Witness,
};
use crate::verdict::{Evidence, PairWitness, Status, Verdict};

/// Random triangles tried when no other rule settles `M`.
pub const M_SEARCH_BUDGET: usize = 2000;

fn realized(rule: &str, w: Witness) -> Verdict {
    Verdict::refuted(rule, Evidence::Realized(Box::new(w)))
}

/// Refutation by non-amenability: a realized witness when the zero is
/// rational, otherwise `fallback` (a witness for another failed
/// property), otherwise the bare irrational zero.
fn not_amenable(f: &PiecewiseFunction, am: &Verdict, fallback: impl FnOnce() -> Option<Witness>) -> Verdict {
    const RULE: &str = "not amenable";
    if let Some(w) = zero_witness(f, am) {
        return realized(RULE, w);
    }
    match fallback() {
        Some(w) => realized(RULE, w),
        None => Verdict {
            status: Status::Refuted,
            rule: RULE.into(),
            witness: am.witness.clone(),
            value: None,
        },
    }
}

pub fn classify_u(f: &PiecewiseFunction) -> Verdict {
    let am = is_amenable(f);
    let inc = is_increasing(f);
    if am.is_refuted() {
        return not_amenable(f, &am, || inc.pair().and_then(|p| monotone_witness(f, p)));
    }
    if inc.is_refuted() {
        return match inc.pair().and_then(|p| monotone_witness(f, p)) {
            Some(w) => realized("not increasing", w),
            None => inc,
        };
    }
    if am.is_proven() && inc.is_proven() {
        return Verdict::proven("amenable+increasing");
    }
    Verdict::unknown("monotonicity undecided")
}

fn nonconstant_pair(f: &PiecewiseFunction, cst: &Verdict) -> Option<Witness> {
    let p = cst.pair()?;
    let (x, y, _) = chain_pair(f, &p.a, &p.b);
    nonconstant_witness(f, &PairWitness {
        fa: f.eval(&x),
        fb: f.eval(&y),
        a: x,
        b: y,
    })
}

pub fn classify_mu(f: &PiecewiseFunction) -> Verdict {
    let am = is_amenable(f);
    let cst = is_constant_on_positive(f);
    if am.is_refuted() {
        return not_amenable(f, &am, || nonconstant_pair(f, &cst));
    }
    if cst.is_refuted() {
        return match nonconstant_pair(f, &cst) {
            Some(w) => realized("not constant on (0, inf)", w),
            None => cst,
        };
    }
    if am.is_proven() && cst.is_proven() {
        let c = cst.value.clone().expect("constant recorded");
        return Verdict::proven("amenable+constant on (0, inf)").with_value(c);
    }
    Verdict::unknown("constancy undecided")
}

/// Doubling decides `UM`; if it stays undecided, membership in `U` or
/// `M` (both contained in `UM`) still proves it.
pub fn classify_um(f: &PiecewiseFunction) -> Verdict {
    classify_um_given(f, || (classify_u(f), classify_m(f)))
}

fn classify_um_given(f: &PiecewiseFunction, others: impl FnOnce() -> (Verdict, Verdict)) -> Verdict {
    let am = is_amenable(f);
    let dbl = satisfies_doubling(f);
    if am.is_refuted() {
        return not_amenable(f, &am, || dbl.pair().and_then(|p| doubling_witness(f, p)));
    }
    if dbl.is_refuted() {
        return match dbl.pair().and_then(|p| doubling_witness(f, p)) {
            Some(w) => realized("doubling fails", w),
            None => dbl,
        };
    }
    if am.is_proven() && dbl.is_proven() {
        return Verdict::proven("amenable+doubling");
    }
    let (u, m) = others();
    if u.is_proven() || m.is_proven() {
        return Verdict::proven("contains U or M member");
    }
    Verdict::unknown(format!("doubling undecided: {}", dbl.rule))
}

pub fn classify_m(f: &PiecewiseFunction) -> Verdict {
    classify_m_with(f, M_SEARCH_BUDGET, 0)
}

/// Rules in order: exact cell decision for affine pieces, then the
/// sufficient conditions, then witness searches.
pub fn classify_m_with(f: &PiecewiseFunction, budget: usize, seed: u64) -> Verdict {
    let am = is_amenable(f);
    if am.is_refuted() && zero_witness(f, &am).is_some() {
        return not_amenable(f, &am, || None);
    }
    if f.is_piecewise_affine() && am.is_proven() {
        const EXACT: &str = "exact cell decision on affine pieces";
        return match affine::triangle_violation(f) {
            None => Verdict::proven(EXACT),
            Some(t) => {
                let w = search::find_m_violation(f, 0, seed)
                    .witness()
                    .cloned()
                    .or_else(|| triangle_witness(f, t))
                    .expect("exact violation realizes");
                realized(EXACT, w)
            }
        };
    }
    if am.is_proven() {
        if is_increasing(f).is_proven() && is_subadditive(f).is_proven() {
            return Verdict::proven("amenable+subadditive+increasing");
        }
        if is_tightly_bounded(f).is_proven() {
            return Verdict::proven("amenable+tightly bounded");
        }
        if is_concave(f).is_proven() {
            return Verdict::proven("amenable+concave");
        }
    }
    if let Some(w) = search::find_m_violation(f, 0, seed).witness() {
        return realized("candidate triangle search", w.clone());
    }
    let dbl = satisfies_doubling(f);
    if let Some(w) = dbl.pair().and_then(|p| triangle_witness(f, (p.a.clone(), p.b.clone(), p.b.clone()))) {
        return realized("doubling fails", w);
    }
    if let Some(w) = search::find_m_violation(f, budget, seed).witness() {
        return realized("random triangle search", w.clone());
    }
    if am.is_refuted() {
        return not_amenable(f, &am, || None);
    }
    Verdict::unknown("no sufficient condition holds and no violation found")
}

// ---------------------------------------------------------------------------
// reports

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityProfile {
    /// `f(0) = 0` and `f(x) -> 0` as `x -> 0+`.
    pub at_zero: bool,
    /// Continuous at every point of `[0, inf)`.
    pub everywhere: bool,
    /// Continuous and at most linear growth at infinity.
    pub uniformly: bool,
    /// Infimum of `f` over `(0, inf)`; `None` if it sits at an irrational
    /// critical point that could not be resolved.
    pub inf_positive: Option<ExtRational>,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub discontinuities: Vec<Rational>,
    /// Failed consistency checks between continuity and class membership.
    /// Nonempty only if the library is wrong.
    pub consistency_notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub amenable: Verdict,
    #[serde(rename = "in_U")]
    pub in_u: Verdict,
    #[serde(rename = "in_MU")]
    pub in_mu: Verdict,
    #[serde(rename = "in_UM")]
    pub in_um: Verdict,
    #[serde(rename = "in_M")]
    pub in_m: Verdict,
    pub continuity: ContinuityProfile,
    pub rules_fired: Vec<String>,
}

/// Every class verdict plus the continuity profile.
pub fn classify(f: &PiecewiseFunction) -> ClassReport {
    let amenable = is_amenable(f);
    let in_u = classify_u(f);
    let in_m = classify_m(f);
    let in_mu = classify_mu(f);
    let in_um = classify_um_given(f, || (in_u.clone(), in_m.clone()));
    let rules_fired = [("amenable", &amenable), ("U", &in_u), ("M", &in_m), ("MU", &in_mu), ("UM", &in_um)]
        .iter()
        .map(|(name, v)| format!("{name}: {} by {}", v.status, v.rule))
        .collect();
    let mut report = ClassReport {
        amenable,
        in_u,
        in_mu,
        in_um,
        in_m,
        continuity: ContinuityProfile {
            at_zero: false,
            everywhere: false,
            uniformly: false,
            inf_positive: None,
            discontinuities: Vec::new(),
            consistency_notes: Vec::new(),
        },
        rules_fired,
    };
    report.continuity = continuity_profile(f, &report);
    report
}

/// Broken inclusions among the verdicts of `report`.
pub fn validate_inclusions(report: &ClassReport) -> Vec<String> {
    let mut out = Vec::new();
    let p = |v: &Verdict| v.is_proven();
    if p(&report.in_mu) && !p(&report.in_u) {
        out.push("MU ⊆ U broken".to_string());
    }
    if p(&report.in_mu) && !p(&report.in_m) {
        out.push("MU ⊆ M broken".to_string());
    }
    if p(&report.in_u) && !p(&report.in_um) {
        out.push("U ⊆ UM broken".to_string());
    }
    if p(&report.in_m) && !p(&report.in_um) {
        out.push("M ⊆ UM broken".to_string());
    }
    if p(&report.in_mu) && report.in_um.is_refuted() {
        out.push("MU ⊆ UM broken".to_string());
    }
    let any = [&report.in_u, &report.in_m, &report.in_mu, &report.in_um].into_iter().any(p);
    if any && !p(&report.amenable) {
        out.push("member of a class but not amenable".to_string());
    }
    out
}

fn uniformly_continuous(f: &PiecewiseFunction, everywhere: bool) -> bool {
    let last = f.segments().last().expect("nonempty");
    everywhere && last.numerator.deg0() <= last.denominator.deg0() + 1
}

pub fn continuity_profile(f: &PiecewiseFunction, report: &ClassReport) -> ContinuityProfile {
    let at_zero = is_continuous_at_zero(f).is_proven();
    let global = global_continuity_report(f);
    let everywhere = global.continuous_everywhere;
    let inf_positive = infimum_positive(f).ok().map(|r| r.inf);
    let inf_zero = inf_positive.as_ref().map(|i| *i == ExtRational::zero());
    let mut notes = Vec::new();
    if report.in_m.is_proven() {
        if at_zero != everywhere {
            notes.push("M member: continuity at 0 differs from continuity everywhere".to_string());
        }
        if inf_zero.is_some_and(|z| z != at_zero) {
            notes.push("M member: continuity at 0 differs from inf over (0, inf) = 0".to_string());
        }
    }
    if report.in_um.is_proven() {
        if inf_zero.is_some_and(|z| z != at_zero) {
            notes.push("UM member: continuity at 0 differs from inf over (0, inf) = 0".to_string());
        }
        let positive = matches!(&inf_positive, Some(ExtRational::Finite(q)) if q.is_positive());
        if !at_zero && inf_positive.is_some() && !positive {
            notes.push("UM member discontinuous at 0 without a positive lower bound".to_string());
        }
    }
    ContinuityProfile {
        at_zero,
        everywhere,
        uniformly: uniformly_continuous(f, everywhere),
        inf_positive,
        discontinuities: global.discontinuities,
        consistency_notes: notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::Axiom;
    use crate::pwfun::parse_function;
    use crate::rational::{frac, int};

    fn f(src: &str) -> PiecewiseFunction {
        parse_function(src).unwrap()
    }

    fn statuses(r: &ClassReport) -> [Status; 4] {
        [r.in_u.status, r.in_m.status, r.in_mu.status, r.in_um.status]
    }

    use Status::{Proven as P, Refuted as R};

    #[test]
    fn table() {
        let cases = [
            ("piecewise\n[0,inf): x/(1+x)", [P, P, R, P]),
            ("piecewise\n[0,1]: x\n(1,inf): 1", [P, P, R, P]),
            ("piecewise\n[0,inf): x^2", [P, R, R, P]),
            ("piecewise\n[0,1]: x\n(1,10]: 1\n(10,11): x - 9\n[11,inf): 2", [P, P, R, P]),
            ("piecewise\n[0,1]: x\n(1,inf): 1/2", [R, R, R, P]),
            ("piecewise\n[0,0]: 0\n(0,inf): 5", [P, P, P, P]),
        ];
        for (src, expected) in cases {
            let r = classify(&f(src));
            assert_eq!(statuses(&r), expected, "{src}");
            assert!(validate_inclusions(&r).is_empty(), "{src}");
            assert!(r.continuity.consistency_notes.is_empty(), "{src}");
        }
    }

    #[test]
    fn rules_are_content_named() {
        assert_eq!(classify_m(&f("piecewise\n[0,inf): x/(1+x)")).rule, "amenable+subadditive+increasing");
        assert_eq!(classify_u(&f("piecewise\n[0,inf): x^2")).rule, "amenable+increasing");
        let step = classify_mu(&f("piecewise\n[0,0]: 0\n(0,inf): 5"));
        assert_eq!(step.value, Some(int(5)));
        // bounded between 1 and 3/2 on (0, inf), but not concave
        let b = classify_m(&f("piecewise\n[0,0]: 0\n(0,1]: 3/2\n(1,inf): 1 + 1/(2x)"));
        assert_eq!(b.rule, "amenable+tightly bounded");
    }

    #[test]
    fn m_witnesses_are_realized() {
        let sq = classify_m(&f("piecewise\n[0,inf): x^2"));
        let w = sq.realized().unwrap();
        assert_eq!((w.failed_axiom.axiom, w.failed_axiom.lhs.clone(), w.failed_axiom.rhs.clone()), (Axiom::M3, int(4), int(2)));
        let ex = classify_m(&f("piecewise\n[0,1]: x\n(1,inf): 1/2"));
        let w = ex.realized().unwrap();
        assert_eq!((w.failed_axiom.lhs.clone(), w.failed_axiom.rhs.clone()), (int(1), frac(5, 6)));
        let bump = classify_m(&f("piecewise\n[0,inf): x/(1+x^2)"));
        let t = bump.realized().unwrap().triplet().unwrap();
        assert_eq!((t.a.clone(), t.b.clone(), t.c.clone()), (int(1), int(10), int(10)));
    }

    #[test]
    fn c_variants() {
        for (c, proven) in [("1/10", false), ("2/5", false), ("49/100", false), ("1/2", true), ("3/5", true), ("1", true)] {
            let v = classify_um(&f(&format!("piecewise\n[0,1]: x\n(1,inf): {c}")));
            assert_eq!(v.is_proven(), proven, "c = {c}");
            assert_eq!(v.is_refuted(), !proven, "c = {c}");
        }
    }

    #[test]
    fn non_amenable_functions_are_refuted_everywhere() {
        let r = classify(&f("piecewise\n[0,inf): x + 1"));
        assert_eq!(statuses(&r), [R, R, R, R]);
        assert!(r.in_m.realized().unwrap().verify(&f("piecewise\n[0,inf): x + 1")));
        let irr = f("piecewise\n[0,inf): x (x^2 - 2)^2");
        let r = classify(&irr);
        assert_eq!(statuses(&r), [R, R, R, R]);
        assert!(r.in_u.realized().unwrap().verify(&irr));
        assert!(validate_inclusions(&r).is_empty());
    }

    #[test]
    fn inclusions_catch_synthetic_inconsistency() {
        let mut r = classify(&f("piecewise\n[0,0]: 0\n(0,inf): 5"));
        assert!(validate_inclusions(&r).is_empty());
        r.in_m = Verdict::unknown("synthetic");
        r.in_m.status = Status::Refuted;
        assert_eq!(validate_inclusions(&r), vec!["MU ⊆ M broken".to_string()]);
    }

    #[test]
    fn continuity() {
        let g = classify(&f("piecewise\n[0,1): x\n[1,inf): 2"));
        assert!(g.in_um.is_proven());
        assert!(g.continuity.at_zero);
        assert!(!g.continuity.everywhere);
        assert!(g.continuity.consistency_notes.is_empty());
        let sq = classify(&f("piecewise\n[0,inf): x^2"));
        assert!(sq.continuity.at_zero && sq.continuity.everywhere && !sq.continuity.uniformly);
        let step = classify(&f("piecewise\n[0,0]: 0\n(0,inf): 5"));
        assert!(!step.continuity.at_zero);
        assert_eq!(step.continuity.inf_positive, Some(int(5).into()));
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = classify(&f("piecewise\n[0,1]: x\n(1,inf): 1/2"));
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"in_UM\""));
        assert_eq!(serde_json::from_str::<ClassReport>(&s).unwrap(), r);
    }
}

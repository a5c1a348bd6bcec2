//! Deciders for the individual properties of a function `f: [0, inf) -> [0, inf)`.
//!
//! Every refutation carries a witness that has been re-checked by exact
//! evaluation before it is returned.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine;
use crate::candidates::{candidate_points, pairs_by_round};
use crate::pwfun::{
    compare_values, poly_sign_on_interval, Interval, IrrationalExtremumUnresolved, Loc, Piece, PiecewiseFunction,
    Segment, Side, Trend,
};
use crate::rational::{int, midpoint, pow2_inv, ExtRational, Rational, Sign};
use crate::rng::Lcg;
use crate::sturm::{sign_pattern, SignSummary};
use crate::verdict::{Evidence, PairWitness, Verdict};

/// Random pairs tried after the candidate grid when hunting for a
/// subadditivity violation.
const SUM_SEARCH_BUDGET: usize = 2000;
/// Halvings allowed when approaching a breakpoint or a limit.
const APPROACH_STEPS: u32 = 128;

fn pair(f: &PiecewiseFunction, a: Rational, b: Rational) -> Evidence {
    Evidence::Pair(PairWitness {
        fa: f.eval(&a),
        fb: f.eval(&b),
        a,
        b,
    })
}

fn point(f: &PiecewiseFunction, x: Rational) -> Evidence {
    Evidence::Point { fx: f.eval(&x), x }
}

// ---------------------------------------------------------------------------
// amenability

/// `f(0) = 0` and `f(x) > 0` for every `x > 0`.
pub fn is_amenable(f: &PiecewiseFunction) -> Verdict {
    let zero = Rational::zero();
    let f0 = f.eval(&zero);
    if !f0.is_zero() {
        return Verdict::refuted("f(0) is not 0", point(f, zero));
    }
    let zero_at = |x: Rational| Verdict::refuted("f vanishes at a positive point", point(f, x));
    for seg in f.segments() {
        let Some(pos) = seg.domain.intersect(&Interval::positive()) else {
            continue;
        };
        if pos.lo_closed && seg.formula_at(&pos.lo).is_zero() {
            return zero_at(pos.lo);
        }
        if pos.is_point() {
            continue;
        }
        match poly_sign_on_interval(&seg.numerator, &pos) {
            SignSummary::AlwaysPositive => {}
            SignSummary::AlwaysZero | SignSummary::AlwaysNegative => return zero_at(pos.sample()),
            SignSummary::Mixed { roots, .. } => {
                let r = &roots[0];
                return match &r.exact {
                    Some(x) => zero_at(x.clone()),
                    None => Verdict::refuted(
                        "f vanishes at an irrational positive point",
                        Evidence::IrrationalZero {
                            lo: r.lo.clone(),
                            hi: r.hi.clone(),
                        },
                    ),
                };
            }
        }
        if let (true, Some(h)) = (pos.hi_closed, pos.hi.finite()) {
            if seg.formula_at(h).is_zero() {
                return zero_at(h.clone());
            }
        }
    }
    Verdict::proven("f(0) = 0 and f > 0 on (0, inf)")
}

// ---------------------------------------------------------------------------
// monotonicity

/// A rational point of the piece close to its left end (the end itself
/// when it belongs to the piece).
fn near_lo(p: &Piece) -> Rational {
    match &p.lo.loc {
        Loc::At(x) if p.lo.closed => x.clone(),
        Loc::At(x) => midpoint(x, &p.interior_point()),
        Loc::Root(r) => r.hi.clone(),
        Loc::Infinity => unreachable!(),
    }
}

fn near_hi(p: &Piece) -> Rational {
    match &p.hi.loc {
        Loc::At(x) if p.hi.closed => x.clone(),
        Loc::At(x) => midpoint(&p.interior_point(), x),
        Loc::Root(r) => r.lo.clone(),
        Loc::Infinity => p.interior_point() + Rational::one(),
    }
}

/// Points `a` in `left` and `b` in `right` near their common end `beta`
/// with `f(a) > f(b)`.
fn junction_drop(f: &PiecewiseFunction, left: &Segment, right: &Segment, beta: &Rational) -> Option<(Rational, Rational)> {
    (0..APPROACH_STEPS).find_map(|k| {
        let d = pow2_inv(k);
        let a = if left.domain.hi_closed { beta.clone() } else { beta - &d };
        let b = if right.domain.lo_closed { beta.clone() } else { beta + &d };
        (left.domain.contains(&a) && right.domain.contains(&b) && f.eval(&a) > f.eval(&b)).then_some((a, b))
    })
}

/// Non-strict: `x <= y` implies `f(x) <= f(y)`.
pub fn is_increasing(f: &PiecewiseFunction) -> Verdict {
    for p in f.monotone_pieces(&Interval::nonnegative()) {
        if p.trend == Trend::Decreasing {
            let (a, b) = (near_lo(&p), near_hi(&p));
            let (a, b) = if a < b && f.eval(&a) > f.eval(&b) { (a, b) } else { (p.interior_point(), near_hi(&p)) };
            if a < b && f.eval(&a) > f.eval(&b) {
                return Verdict::refuted("decreasing stretch inside a segment", pair(f, a, b));
            }
            return Verdict::unknown("decreasing stretch found but no rational witness");
        }
    }
    for w in f.segments().windows(2) {
        let beta = w[0].domain.hi.finite().expect("only the last segment is unbounded");
        if w[0].formula_at(beta) > w[1].formula_at(beta) {
            return match junction_drop(f, &w[0], &w[1], beta) {
                Some((a, b)) => Verdict::refuted("drop across a breakpoint", pair(f, a, b)),
                None => Verdict::unknown("drop across a breakpoint but no rational witness"),
            };
        }
    }
    Verdict::proven("nondecreasing on each segment and across breakpoints")
}

// ---------------------------------------------------------------------------
// concavity

fn chord(f: &PiecewiseFunction, x1: &Rational, x2: &Rational, t: &Rational) -> Option<Evidence> {
    if x1.is_negative() || x2.is_negative() || x1 >= x2 {
        return None;
    }
    let s = Rational::one() - t;
    let mid = &s * x1 + t * x2;
    let f_mid = f.eval(&mid);
    let chord = &s * f.eval(x1) + t * f.eval(x2);
    (f_mid < chord).then(|| Evidence::Chord {
        x1: x1.clone(),
        x2: x2.clone(),
        t: t.clone(),
        f_mid,
        chord,
    })
}

/// Chords around `beta`: straddling it, ending at it, starting at it.
fn chord_near(f: &PiecewiseFunction, beta: &Rational) -> Option<Evidence> {
    let ts = [Rational::new(1.into(), 2.into()), Rational::new(1.into(), 4.into()), Rational::new(3.into(), 4.into())];
    for k in 0..APPROACH_STEPS {
        let d = pow2_inv(k);
        let spans = [(beta - &d, beta + &d), (beta - &d, beta.clone()), (beta.clone(), beta + &d)];
        for (x1, x2) in &spans {
            for t in &ts {
                if let Some(e) = chord(f, x1, x2, t) {
                    return Some(e);
                }
            }
        }
    }
    None
}

enum ConcavityFailure {
    Convex { lo: Rational, hi: Rational },
    At(Rational),
}

fn concavity_failure(f: &PiecewiseFunction) -> Option<ConcavityFailure> {
    let segs = f.segments();
    for (i, seg) in segs.iter().enumerate() {
        if !seg.domain.is_point() {
            let p2 = seg.second_derivative_numerator();
            let pattern = sign_pattern(&p2, &seg.domain.lo, &seg.domain.hi);
            if let Some(g) = pattern.gaps.iter().find(|g| g.sign == Sign::Positive) {
                let hi = match &g.hi {
                    ExtRational::Finite(h) => h.clone(),
                    ExtRational::PosInf => &g.lo + int(2),
                };
                return Some(ConcavityFailure::Convex { lo: g.lo.clone(), hi });
            }
        }
        let Some(next) = segs.get(i + 1) else {
            break;
        };
        let beta = seg.domain.hi.finite().unwrap();
        let (left, right) = (seg.formula_at(beta), next.formula_at(beta));
        if beta.is_zero() {
            // only the value at 0 precedes; it may sit below the limit
            if left > right {
                return Some(ConcavityFailure::At(beta.clone()));
            }
            continue;
        }
        if left != right {
            return Some(ConcavityFailure::At(beta.clone()));
        }
        if !seg.domain.is_point() && !next.domain.is_point() && seg.derivative_at(beta) < next.derivative_at(beta) {
            return Some(ConcavityFailure::At(beta.clone()));
        }
    }
    None
}

/// `f((1-t) x1 + t x2) >= (1-t) f(x1) + t f(x2)` on `[0, inf)`.
pub fn is_concave(f: &PiecewiseFunction) -> Verdict {
    let Some(failure) = concavity_failure(f) else {
        return Verdict::proven("continuous, concave pieces, slopes non-increasing at breakpoints");
    };
    let (rule, local) = match &failure {
        ConcavityFailure::Convex { lo, hi } => {
            let (three, four) = (int(3), int(4));
            let x1 = (&three * lo + hi) / &four;
            let x2 = (lo + &three * hi) / &four;
            ("strictly convex stretch", chord(f, &x1, &x2, &Rational::new(1.into(), 2.into())))
        }
        ConcavityFailure::At(beta) => ("jump or convex kink at a breakpoint", chord_near(f, beta)),
    };
    let found = local.or_else(|| f.grid_points().iter().find_map(|b| chord_near(f, b)));
    match found {
        Some(e) => Verdict::refuted(rule, e),
        None => Verdict::unknown(format!("{rule} but no rational chord found")),
    }
}

// ---------------------------------------------------------------------------
// subadditivity

fn sum_evidence(f: &PiecewiseFunction, a: &Rational, b: &Rational) -> Option<Evidence> {
    let (fa, fb, fab) = (f.eval(a), f.eval(b), f.eval(&(a + b)));
    (fab > &fa + &fb).then(|| Evidence::Sum {
        a: a.clone(),
        b: b.clone(),
        fa,
        fb,
        fab,
    })
}

/// Candidate grid first, then seeded random pairs.
pub(crate) fn search_sum_violation(f: &PiecewiseFunction, budget: usize, seed: u64) -> Option<Evidence> {
    let pts = candidate_points(f);
    if let Some(e) = pairs_by_round(&pts).find_map(|(i, j)| sum_evidence(f, &pts[i], &pts[j])) {
        return Some(e);
    }
    let mut rng = Lcg::new(seed);
    (0..budget).find_map(|_| {
        let (a, b) = (rng.rational(), rng.rational());
        sum_evidence(f, &a, &b)
    })
}

/// `f(a + b) <= f(a) + f(b)` for all `a, b >= 0`.
pub fn is_subadditive(f: &PiecewiseFunction) -> Verdict {
    const EXACT: &str = "exact cell decision on affine pieces";
    if f.is_piecewise_affine() {
        return match affine::subadditivity_violation(f) {
            None => Verdict::proven(EXACT),
            Some((a, b)) => {
                let e = search_sum_violation(f, 0, 0)
                    .or_else(|| sum_evidence(f, &a, &b))
                    .expect("exact violation re-verifies");
                Verdict::refuted(EXACT, e)
            }
        };
    }
    if is_amenable(f).is_proven() && is_concave(f).is_proven() {
        return Verdict::proven("amenable+concave");
    }
    match search_sum_violation(f, SUM_SEARCH_BUDGET, 0) {
        Some(e) => Verdict::refuted("candidate and random search", e),
        None => Verdict::unknown("not affine, not amenable+concave, and no violation found"),
    }
}

/// Sampled check that `x -> f(x)/x` is non-increasing on `(0, inf)`.
/// Compares consecutive points among the positive breakpoints and
/// `samples` seeded draws.
pub fn ratio_is_decreasing(f: &PiecewiseFunction, samples: usize, seed: u64) -> Verdict {
    let mut rng = Lcg::new(seed);
    let mut pts = f.breakpoints();
    pts.extend((0..samples).map(|_| rng.rational()));
    pts.sort();
    pts.dedup();
    for w in pts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        // f(a)/a >= f(b)/b  <=>  f(a) b >= f(b) a
        if f.eval(a) * b < f.eval(b) * a {
            return Verdict::refuted("sampled ratio increases", pair(f, a.clone(), b.clone()));
        }
    }
    Verdict::proven("sampled ratio non-increasing")
}

// ---------------------------------------------------------------------------
// bounds, constancy, doubling

/// Some `v > 0` has `v <= f(x) <= 2v` for every `x > 0`.
pub fn is_tightly_bounded(f: &PiecewiseFunction) -> Verdict {
    let e = match f.extrema_on(&Interval::positive()) {
        Ok(e) => e,
        Err(err) => return Verdict::unknown(err.to_string()),
    };
    let bounds = Evidence::Bounds {
        inf: e.inf.clone(),
        sup: e.sup.clone(),
    };
    match &e.inf {
        ExtRational::Finite(m) if m.is_positive() => {
            if e.sup <= ExtRational::Finite(m * int(2)) {
                Verdict::proven("inf > 0 and sup <= 2 inf").with_value(m.clone())
            } else {
                Verdict::refuted("sup exceeds twice the inf", bounds)
            }
        }
        _ => Verdict::refuted("inf over (0, inf) is 0", bounds),
    }
}

/// `f` takes one value on `(0, inf)`; the value is recorded.
pub fn is_constant_on_positive(f: &PiecewiseFunction) -> Verdict {
    let mut c: Option<Rational> = None;
    let mut constant = true;
    for seg in f.segments() {
        let Some(pos) = seg.domain.intersect(&Interval::positive()) else {
            continue;
        };
        if !pos.is_point() && !seg.is_constant_formula() {
            constant = false;
            break;
        }
        let v = seg.formula_at(&pos.sample());
        match &c {
            Some(c) if *c != v => {
                constant = false;
                break;
            }
            _ => c = Some(v),
        }
    }
    if constant {
        return Verdict::proven("one constant formula on (0, inf)").with_value(c.expect("(0, inf) is covered"));
    }
    let u = Rational::one();
    let fu = f.eval(&u);
    let mut cands = f.breakpoints();
    for k in [9, 33] {
        for seg in f.segments() {
            if let Some(pos) = seg.domain.intersect(&Interval::positive()) {
                cands.extend(pos.samples(k));
            }
        }
    }
    match cands.into_iter().find(|v| f.eval(v) != fu) {
        Some(v) => {
            let (a, b) = if v < u { (v, u) } else { (u, v) };
            Verdict::refuted("two positive points with different values", pair(f, a, b))
        }
        None => Verdict::unknown("nonconstant formula but no differing sample found"),
    }
}

/// A point of the piece approaching the given end as `k` grows; the end
/// itself when it is a closed rational end. `None` if the step overshoots.
fn approach(p: &Piece, toward_lo: bool, k: u32) -> Option<Rational> {
    let (end, other) = if toward_lo { (&p.lo, &p.hi) } else { (&p.hi, &p.lo) };
    let d = pow2_inv(k);
    match &end.loc {
        Loc::At(x) if end.closed => Some(x.clone()),
        Loc::At(x) => {
            let cand = if toward_lo { x + &d } else { x - &d };
            let inside = match &other.loc {
                Loc::Infinity => true,
                Loc::At(y) => {
                    if toward_lo {
                        cand < *y || (cand == *y && other.closed)
                    } else {
                        cand > *y || (cand == *y && other.closed)
                    }
                }
                Loc::Root(r) => {
                    if toward_lo {
                        cand < r.lo
                    } else {
                        cand > r.hi
                    }
                }
            };
            inside.then_some(cand)
        }
        Loc::Root(r) => {
            let mut r = r.clone();
            for _ in 0..k {
                r.refine();
            }
            Some(match &r.exact {
                Some(x) => x.clone(),
                None if toward_lo => r.hi.clone(),
                None => r.lo.clone(),
            })
        }
        Loc::Infinity => Some(p.interior_point() + Rational::from_integer(num_bigint::BigInt::one() << k)),
    }
}

/// `a <= b` with `f(a) > 2 f(b)`, `a` near the supremum end of `sup_piece`
/// and `b` near the infimum end of `inf_piece`.
fn doubling_pair(f: &PiecewiseFunction, sup_piece: &Piece, inf_piece: &Piece) -> Option<(Rational, Rational)> {
    let two = int(2);
    (0..APPROACH_STEPS).find_map(|k| {
        let a = approach(sup_piece, sup_piece.trend == Trend::Decreasing, k)?;
        let b = approach(inf_piece, inf_piece.trend != Trend::Decreasing, k)?;
        (a <= b && f.eval(&a) > &two * f.eval(&b)).then_some((a, b))
    })
}

/// `f(a) <= 2 f(b)` whenever `0 <= a <= b`.
pub fn satisfies_doubling(f: &PiecewiseFunction) -> Verdict {
    const RULE: &str = "running sup at most twice every later value";
    let unresolved = || Verdict::unknown("comparison at an irrational critical point unresolved");
    let fail = |s: &Piece, j: &Piece| match doubling_pair(f, s, j) {
        Some((a, b)) => Verdict::refuted(RULE, pair(f, a, b)),
        None => Verdict::unknown("doubling fails in the limit but no rational witness found"),
    };
    let pieces = f.monotone_pieces(&Interval::nonnegative());
    let two = int(2);
    let mut running: Option<usize> = None;
    for (j, p) in pieces.iter().enumerate() {
        let inf2 = p.inf_value().times(&two);
        if let Some(s) = running {
            match compare_values(&pieces[s].sup_value(), &inf2) {
                None => return unresolved(),
                Some(Ordering::Greater) => return fail(&pieces[s], p),
                Some(_) => {}
            }
        }
        if p.trend == Trend::Decreasing {
            match compare_values(&p.sup_value(), &inf2) {
                None => return unresolved(),
                Some(Ordering::Greater) => return fail(p, p),
                Some(_) => {}
            }
        }
        running = match running {
            None => Some(j),
            Some(s) => match compare_values(&p.sup_value(), &pieces[s].sup_value()) {
                None => return unresolved(),
                Some(Ordering::Greater) => Some(j),
                Some(_) => Some(s),
            },
        };
    }
    Verdict::proven(RULE)
}

// ---------------------------------------------------------------------------
// continuity

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfimumRecord {
    pub inf: ExtRational,
    pub attained: bool,
}

/// Infimum of `f` over `(0, inf)`.
pub fn infimum_positive(f: &PiecewiseFunction) -> Result<InfimumRecord, IrrationalExtremumUnresolved> {
    let e = f.extrema_on(&Interval::positive())?;
    Ok(InfimumRecord {
        inf: e.inf,
        attained: e.inf_attained,
    })
}

/// `f(0) = 0` and `f(x) -> 0` as `x -> 0+`.
pub fn is_continuous_at_zero(f: &PiecewiseFunction) -> Verdict {
    let zero = Rational::zero();
    let f0 = f.eval(&zero);
    if !f0.is_zero() {
        return Verdict::refuted("f(0) is not 0", point(f, zero));
    }
    let right = f
        .one_sided_limit(&ExtRational::Finite(zero.clone()), Side::Right)
        .expect("right limit at 0 exists");
    if right == ExtRational::zero() {
        Verdict::proven("f(0) = 0 = right limit at 0")
    } else {
        Verdict::refuted("right limit at 0 is positive", Evidence::Limit { at: zero, value: right })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub continuous_everywhere: bool,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub discontinuities: Vec<Rational>,
}

/// Points of `[0, inf)` where `f` is discontinuous.
pub fn global_continuity_report(f: &PiecewiseFunction) -> ContinuityReport {
    let mut out: Vec<Rational> = Vec::new();
    for w in f.segments().windows(2) {
        let beta = w[0].domain.hi.finite().unwrap();
        let jump = if beta.is_zero() {
            f.eval(beta) != w[1].formula_at(beta)
        } else {
            w[0].formula_at(beta) != w[1].formula_at(beta)
        };
        if jump && out.last() != Some(beta) {
            out.push(beta.clone());
        }
    }
    ContinuityReport {
        continuous_everywhere: out.is_empty(),
        discontinuities: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwfun::parse_function;
    use crate::rational::frac;
    use crate::verdict::Status;

    fn f(src: &str) -> PiecewiseFunction {
        parse_function(src).unwrap()
    }

    fn staircase() -> PiecewiseFunction {
        f("piecewise\n[0,1]: x\n(1,10]: 1\n(10,11): x - 9\n[11,inf): 2")
    }

    fn ex55() -> PiecewiseFunction {
        f("piecewise\n[0,1]: x\n(1,inf): 1/2")
    }

    fn pair_of(v: &Verdict) -> (Rational, Rational) {
        let p = v.pair().expect("pair witness");
        (p.a.clone(), p.b.clone())
    }

    #[test]
    fn amenability() {
        assert!(is_amenable(&f("piecewise\n[0,inf): x^2")).is_proven());
        assert!(is_amenable(&ex55()).is_proven());
        let zero = is_amenable(&f("piecewise\n[0,inf): 0"));
        assert_eq!(zero.witness, Some(Evidence::Point { x: int(1), fx: int(0) }));
        let shifted = is_amenable(&f("piecewise\n[0,inf): x + 1"));
        assert_eq!(shifted.witness, Some(Evidence::Point { x: int(0), fx: int(1) }));
        let touch = is_amenable(&f("piecewise\n[0,inf): x (x - 2)^2"));
        assert_eq!(touch.witness, Some(Evidence::Point { x: int(2), fx: int(0) }));
        let irr = is_amenable(&f("piecewise\n[0,inf): x (x^2 - 2)^2"));
        assert!(matches!(irr.witness, Some(Evidence::IrrationalZero { .. })));
        let end = is_amenable(&f("piecewise\n[0,1]: x - x^2\n(1,inf): x - 1"));
        assert_eq!(end.witness, Some(Evidence::Point { x: int(1), fx: int(0) }));
    }

    #[test]
    fn monotonicity() {
        assert!(is_increasing(&staircase()).is_proven());
        assert!(is_increasing(&f("piecewise\n[0,inf): x^2")).is_proven());
        let v = is_increasing(&ex55());
        assert_eq!(pair_of(&v), (int(1), int(2)));
        let w = is_increasing(&f("piecewise\n[0,inf): x/(1+x^2)"));
        let (a, b) = pair_of(&w);
        assert!(a < b);
        assert!(f("piecewise\n[0,inf): x/(1+x^2)").eval(&a) > f("piecewise\n[0,inf): x/(1+x^2)").eval(&b));
    }

    #[test]
    fn concavity() {
        assert!(is_concave(&f("piecewise\n[0,inf): x/(1+x)")).is_proven());
        assert!(is_concave(&f("piecewise\n[0,inf): x")).is_proven());
        assert!(is_concave(&f("piecewise\n[0,0]: 0\n(0,inf): 3")).is_proven());
        let v = is_concave(&staircase());
        assert_eq!(
            v.witness,
            Some(Evidence::Chord {
                x1: int(9),
                x2: int(11),
                t: frac(1, 2),
                f_mid: int(1),
                chord: frac(3, 2)
            })
        );
        assert!(is_concave(&f("piecewise\n[0,inf): x^2")).is_refuted());
        assert!(is_concave(&ex55()).is_refuted());
        // jump up at 0 from a positive value
        assert!(is_concave(&f("piecewise\n[0,0]: 5\n(0,inf): 1")).is_refuted());
    }

    #[test]
    fn subadditivity() {
        assert_eq!(is_subadditive(&staircase()).rule, "exact cell decision on affine pieces");
        assert!(is_subadditive(&staircase()).is_proven());
        let sq = is_subadditive(&f("piecewise\n[0,inf): x^2"));
        assert_eq!(
            sq.witness,
            Some(Evidence::Sum {
                a: int(1),
                b: int(1),
                fa: int(1),
                fb: int(1),
                fab: int(4)
            })
        );
        let r = is_subadditive(&f("piecewise\n[0,inf): x/(1+x)"));
        assert_eq!((r.status, r.rule.as_str()), (Status::Proven, "amenable+concave"));
    }

    #[test]
    fn ratio_samples() {
        assert!(ratio_is_decreasing(&f("piecewise\n[0,inf): x/(1+x)"), 200, 1).is_proven());
        assert!(ratio_is_decreasing(&f("piecewise\n[0,inf): x"), 200, 1).is_proven());
        assert!(ratio_is_decreasing(&f("piecewise\n[0,inf): x^2"), 200, 1).is_refuted());
    }

    #[test]
    fn tight_bounds() {
        let v = is_tightly_bounded(&f("piecewise\n[0,0]: 0\n(0,1]: 1\n(1,inf): 2"));
        assert!(v.is_proven());
        assert_eq!(v.value, Some(int(1)));
        assert!(is_tightly_bounded(&f("piecewise\n[0,inf): x/(1+x)")).is_refuted());
        assert!(is_tightly_bounded(&ex55()).is_refuted());
        assert!(is_tightly_bounded(&f("piecewise\n[0,0]: 0\n(0,1]: 1\n(1,inf): 3")).is_refuted());
    }

    #[test]
    fn constancy() {
        let c = is_constant_on_positive(&f("piecewise\n[0,0]: 0\n(0,inf): 3"));
        assert_eq!(c.value, Some(int(3)));
        assert_eq!(pair_of(&is_constant_on_positive(&f("piecewise\n[0,inf): x"))), (int(1), int(2)));
        assert_eq!(pair_of(&is_constant_on_positive(&staircase())), (int(1), int(11)));
    }

    #[test]
    fn doubling() {
        assert!(satisfies_doubling(&ex55()).is_proven());
        assert!(satisfies_doubling(&f("piecewise\n[0,inf): x^2")).is_proven());
        let v = satisfies_doubling(&f("piecewise\n[0,1]: x\n(1,inf): 2/5"));
        assert_eq!(pair_of(&v), (int(1), int(2)));
        assert!(satisfies_doubling(&f("piecewise\n[0,1]: x\n(1,inf): 1/2")).is_proven());
        // decreasing to 0 at infinity
        let w = satisfies_doubling(&f("piecewise\n[0,inf): x/(1+x^2)"));
        let (a, b) = pair_of(&w);
        let g = f("piecewise\n[0,inf): x/(1+x^2)");
        assert!(a <= b && g.eval(&a) > int(2) * g.eval(&b));
    }

    #[test]
    fn continuity() {
        let step = f("piecewise\n[0,0]: 0\n(0,inf): 3");
        assert_eq!(infimum_positive(&step).unwrap(), InfimumRecord { inf: int(3).into(), attained: true });
        let g = f("piecewise\n[0,1): x\n[1,inf): 2");
        assert_eq!(infimum_positive(&g).unwrap(), InfimumRecord { inf: int(0).into(), attained: false });
        assert!(is_continuous_at_zero(&ex55()).is_proven());
        assert_eq!(
            is_continuous_at_zero(&step).witness,
            Some(Evidence::Limit { at: int(0), value: int(3).into() })
        );
        assert!(global_continuity_report(&staircase()).continuous_everywhere);
        assert_eq!(global_continuity_report(&g).discontinuities, vec![int(1)]);
        assert_eq!(global_continuity_report(&step).discontinuities, vec![int(0)]);
    }
}

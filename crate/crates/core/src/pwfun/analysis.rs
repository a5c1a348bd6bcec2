//! Monotone decomposition and exact extrema.
//!
//! Each segment is split at the sign changes of its derivative numerator.
//! On the resulting pieces the formula is strictly monotone or constant, so
//! infima and suprema are taken at piece ends. Ends at irrational critical
//! points are kept as isolated roots and compared through interval
//! enclosures of the formula, never through floating point.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Interval, PiecewiseFunction};
use crate::poly::Poly;
use crate::rational::{midpoint, ExtRational, Rational, Sign};
use crate::sturm::{sign_pattern, IsolatedRoot, SturmChain};

/// Refinement steps allowed when separating two enclosures.
const REFINE_BUDGET: usize = 96;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[error("extremum at an irrational critical point could not be resolved exactly: {detail}")]
pub struct IrrationalExtremumUnresolved {
    pub detail: String,
}

impl IrrationalExtremumUnresolved {
    fn new(detail: impl Into<String>) -> Self {
        IrrationalExtremumUnresolved { detail: detail.into() }
    }
}

/// Exact infimum and supremum of `f` over an interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extrema {
    pub inf: ExtRational,
    pub inf_attained: bool,
    /// A point where the infimum is attained, when it is.
    #[serde(with = "crate::rational::serde_q::opt")]
    pub inf_at: Option<Rational>,
    pub sup: ExtRational,
    pub sup_attained: bool,
    #[serde(with = "crate::rational::serde_q::opt")]
    pub sup_at: Option<Rational>,
}

/// Location of a piece end.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Loc {
    At(Rational),
    Root(IsolatedRoot),
    Infinity,
}

impl Loc {
    /// Rational location, if known exactly.
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Loc::At(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct End {
    pub loc: Loc,
    /// Whether the end point belongs to the piece.
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Trend {
    Increasing,
    Decreasing,
    Constant,
}

/// A maximal stretch of one segment on which the formula is strictly
/// monotone or constant.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Piece {
    pub segment: usize,
    pub numerator: Poly,
    pub denominator: Poly,
    pub lo: End,
    pub hi: End,
    pub trend: Trend,
}

impl Piece {
    pub fn is_point(&self) -> bool {
        matches!((&self.lo.loc, &self.hi.loc), (Loc::At(a), Loc::At(b)) if a == b)
    }

    pub fn value_at(&self, loc: &Loc) -> Value {
        match loc {
            Loc::At(x) => Value::Exact(self.numerator.eval(x) / self.denominator.eval(x)),
            Loc::Root(r) => Value::Root {
                num: self.numerator.clone(),
                den: self.denominator.clone(),
                root: r.clone(),
            },
            Loc::Infinity => {
                let (dn, dd) = (self.numerator.deg0(), self.denominator.deg0());
                if self.numerator.is_zero() || dn < dd {
                    Value::Exact(Rational::zero())
                } else if dn == dd {
                    Value::Exact(self.numerator.leading() / self.denominator.leading())
                } else {
                    Value::Inf
                }
            }
        }
    }

    /// End at which the infimum over the piece is approached.
    pub fn inf_end(&self) -> &End {
        match self.trend {
            Trend::Decreasing => &self.hi,
            _ => &self.lo,
        }
    }

    pub fn sup_end(&self) -> &End {
        match self.trend {
            Trend::Decreasing => &self.lo,
            _ => &self.hi,
        }
    }

    pub fn inf_value(&self) -> Value {
        self.value_at(&self.inf_end().loc)
    }

    pub fn sup_value(&self) -> Value {
        self.value_at(&self.sup_end().loc)
    }

    /// Whether the infimum over the piece is a value of the piece.
    pub fn inf_attained(&self) -> bool {
        self.trend == Trend::Constant || self.inf_end().closed
    }

    pub fn sup_attained(&self) -> bool {
        self.trend == Trend::Constant || self.sup_end().closed
    }

    /// A rational point inside the piece, strictly inside unless the piece
    /// is a single point. Rational points strictly between the piece's
    /// ends are `inner_lo()` and `inner_hi()`.
    pub fn interior_point(&self) -> Rational {
        if self.is_point() {
            return self.lo.loc.exact().unwrap().clone();
        }
        let lo = self.inner_lo();
        match &self.hi.loc {
            Loc::Infinity => lo + Rational::one(),
            _ => midpoint(&lo, &self.inner_hi()),
        }
    }

    /// A rational lower bound for the piece's interior: the left end when
    /// rational, else the right end of the root's isolating interval.
    pub fn inner_lo(&self) -> Rational {
        match &self.lo.loc {
            Loc::At(x) => x.clone(),
            Loc::Root(r) => r.hi.clone(),
            Loc::Infinity => unreachable!("piece cannot start at infinity"),
        }
    }

    /// A rational upper bound for a bounded piece's interior.
    pub fn inner_hi(&self) -> Rational {
        match &self.hi.loc {
            Loc::At(x) => x.clone(),
            Loc::Root(r) => r.lo.clone(),
            Loc::Infinity => self.inner_lo() + Rational::from_integer(2.into()),
        }
    }
}

/// A function value at a piece end: exact, `+inf`, or the formula
/// `num/den` at an irrational root.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Value {
    Exact(Rational),
    Inf,
    Root {
        num: Poly,
        den: Poly,
        root: IsolatedRoot,
    },
}

impl Value {
    /// `k * self` for `k > 0`.
    pub fn times(&self, k: &Rational) -> Value {
        match self {
            Value::Exact(q) => Value::Exact(q * k),
            Value::Inf => Value::Inf,
            Value::Root { num, den, root } => Value::Root {
                num: num.scale(k),
                den: den.clone(),
                root: root.clone(),
            },
        }
    }

    pub fn to_ext(&self) -> Option<ExtRational> {
        match self {
            Value::Exact(q) => Some(ExtRational::Finite(q.clone())),
            Value::Inf => Some(ExtRational::PosInf),
            Value::Root { .. } => None,
        }
    }

    /// Closed rational enclosure of the value.
    fn enclosure(&self) -> (Rational, Rational) {
        match self {
            Value::Exact(q) => (q.clone(), q.clone()),
            Value::Inf => unreachable!("no enclosure for +inf"),
            Value::Root { num, den, root } => quotient_enclosure(num, den, root),
        }
    }

    fn refine(&mut self) {
        if let Value::Root { root, .. } = self {
            root.refine();
            if let Some(x) = root.exact.clone() {
                if let Value::Root { num, den, .. } = self {
                    *self = Value::Exact(num.eval(&x) / den.eval(&x));
                }
            }
        }
    }
}

fn quotient_enclosure(num: &Poly, den: &Poly, root: &IsolatedRoot) -> (Rational, Rational) {
    if let Some(x) = &root.exact {
        let v = num.eval(x) / den.eval(x);
        return (v.clone(), v);
    }
    let (nl, nh) = num.eval_interval(&root.lo, &root.hi);
    let (dl, dh) = den.eval_interval(&root.lo, &root.hi);
    if !dl.is_positive() {
        // Too coarse to bound the quotient; report a useless enclosure
        // that forces another refinement.
        let big = nh.abs() + nl.abs() + Rational::one();
        return (-big.clone() * Rational::from_integer(1_000_000.into()), big * Rational::from_integer(1_000_000.into()));
    }
    let cands = [&nl / &dl, &nl / &dh, &nh / &dl, &nh / &dh];
    let lo = cands.iter().min().unwrap().clone();
    let hi = cands.iter().max().unwrap().clone();
    (lo, hi)
}

/// Whether the root isolated by `root` is also a root of `q`.
fn shares_root(root: &IsolatedRoot, q: &Poly) -> bool {
    if let Some(x) = &root.exact {
        return q.eval(x).is_zero();
    }
    if q.is_zero() {
        return true;
    }
    let g = root.poly().gcd(q);
    if g.deg0() == 0 {
        return false;
    }
    SturmChain::new(&g).count(&root.lo, &root.hi) > 0
}

/// Exact test `a == b` where the answer can be decided algebraically.
fn provably_equal(a: &Value, b: &Value) -> Option<bool> {
    match (a, b) {
        (Value::Exact(x), Value::Exact(y)) => Some(x == y),
        (Value::Inf, Value::Inf) => Some(true),
        (Value::Inf, _) | (_, Value::Inf) => Some(false),
        (Value::Root { num, den, root }, Value::Exact(q)) | (Value::Exact(q), Value::Root { num, den, root }) => {
            let diff = num - &den.scale(q);
            shares_root(root, &diff).then_some(true)
        }
        (
            Value::Root { num: n1, den: d1, root: r1 },
            Value::Root { num: n2, den: d2, root: r2 },
        ) => {
            if r1.hi <= r2.lo || r2.hi <= r1.lo {
                return None;
            }
            let common = r1.poly().gcd(r2.poly());
            let lo = std::cmp::max(&r1.lo, &r2.lo).clone();
            let hi = std::cmp::min(&r1.hi, &r2.hi).clone();
            if common.deg0() == 0 || SturmChain::new(&common).count(&lo, &hi) == 0 {
                return None;
            }
            let diff = &(n1 * d2) - &(n2 * d1);
            shares_root(r1, &diff).then_some(true)
        }
    }
}

/// Exact comparison of two values; `None` when enclosures could not be
/// separated within the refinement budget.
pub(crate) fn compare_values(a: &Value, b: &Value) -> Option<Ordering> {
    match (a, b) {
        (Value::Inf, Value::Inf) => return Some(Ordering::Equal),
        (Value::Inf, _) => return Some(Ordering::Greater),
        (_, Value::Inf) => return Some(Ordering::Less),
        (Value::Exact(x), Value::Exact(y)) => return Some(x.cmp(y)),
        _ => {}
    }
    if provably_equal(a, b) == Some(true) {
        return Some(Ordering::Equal);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..REFINE_BUDGET {
        let (al, ah) = a.enclosure();
        let (bl, bh) = b.enclosure();
        if ah < bl {
            return Some(Ordering::Less);
        }
        if bh < al {
            return Some(Ordering::Greater);
        }
        if let (Value::Exact(x), Value::Exact(y)) = (&a, &b) {
            return Some(x.cmp(y));
        }
        a.refine();
        b.refine();
    }
    None
}

/// Monotone pieces of `f` restricted to `interval`, in left-to-right order.
pub(crate) fn monotone_pieces(f: &PiecewiseFunction, interval: &Interval) -> Vec<Piece> {
    let mut out = Vec::new();
    for (i, seg) in f.segments().iter().enumerate() {
        let Some(dom) = seg.domain.intersect(interval) else {
            continue;
        };
        let lo = End {
            loc: Loc::At(dom.lo.clone()),
            closed: dom.lo_closed,
        };
        let hi = End {
            loc: match &dom.hi {
                ExtRational::Finite(h) => Loc::At(h.clone()),
                ExtRational::PosInf => Loc::Infinity,
            },
            closed: dom.hi_closed,
        };
        let make = |lo: End, hi: End, trend: Trend| Piece {
            segment: i,
            numerator: seg.numerator.clone(),
            denominator: seg.denominator.clone(),
            lo,
            hi,
            trend,
        };
        let dn = seg.derivative_numerator();
        if dom.is_point() || dn.is_zero() {
            out.push(make(lo, hi, Trend::Constant));
            continue;
        }
        let pattern = sign_pattern(&dn, &dom.lo, &dom.hi);
        let trend_of = |s: Sign| match s {
            Sign::Positive => Trend::Increasing,
            Sign::Negative => Trend::Decreasing,
            Sign::Zero => Trend::Constant,
        };
        let mut start = lo;
        let mut trend = trend_of(pattern.gaps[0].sign);
        for (root, gap) in pattern.roots.iter().zip(&pattern.gaps[1..]) {
            let next = trend_of(gap.sign);
            if next == trend {
                continue;
            }
            let loc = match &root.exact {
                Some(x) => Loc::At(x.clone()),
                None => Loc::Root(root.clone()),
            };
            out.push(make(start, End { loc: loc.clone(), closed: true }, trend));
            start = End { loc, closed: true };
            trend = next;
        }
        out.push(make(start, hi, trend));
    }
    out
}

struct Best {
    value: Value,
    attained_at: Option<Rational>,
    attained: bool,
}

fn location_of(end: &End, piece: &Piece) -> Option<Rational> {
    if piece.trend == Trend::Constant {
        return Some(match &end.loc {
            Loc::At(x) if end.closed => x.clone(),
            _ => piece.interior_point(),
        });
    }
    match &end.loc {
        Loc::At(x) if end.closed => Some(x.clone()),
        _ => None,
    }
}

fn fold_extreme(
    pieces: &[Piece],
    want: Ordering,
    value: impl Fn(&Piece) -> Value,
    end: impl Fn(&Piece) -> &End,
    attained: impl Fn(&Piece) -> bool,
) -> Result<Best, IrrationalExtremumUnresolved> {
    let mut best: Option<Best> = None;
    for p in pieces {
        let v = value(p);
        let here_attained = attained(p);
        let here_at = if here_attained { location_of(end(p), p) } else { None };
        match &mut best {
            None => {
                best = Some(Best {
                    value: v,
                    attained_at: here_at,
                    attained: here_attained,
                })
            }
            Some(b) => {
                let ord = compare_values(&v, &b.value).ok_or_else(|| {
                    IrrationalExtremumUnresolved::new("two candidate extrema are too close to separate")
                })?;
                if ord == want {
                    *b = Best {
                        value: v,
                        attained_at: here_at,
                        attained: here_attained,
                    };
                } else if ord == Ordering::Equal && !b.attained && here_attained {
                    b.attained = true;
                    b.attained_at = here_at;
                }
            }
        }
    }
    Ok(best.expect("interval meets at least one segment"))
}

pub(crate) fn extrema_on(f: &PiecewiseFunction, interval: &Interval) -> Result<Extrema, IrrationalExtremumUnresolved> {
    let pieces = monotone_pieces(f, interval);
    let inf = fold_extreme(&pieces, Ordering::Less, Piece::inf_value, Piece::inf_end, Piece::inf_attained)?;
    let sup = fold_extreme(&pieces, Ordering::Greater, Piece::sup_value, Piece::sup_end, Piece::sup_attained)?;
    let ext = |b: &Best| {
        b.value.to_ext().ok_or_else(|| {
            IrrationalExtremumUnresolved::new("extremum is taken at an irrational critical point")
        })
    };
    Ok(Extrema {
        inf: ext(&inf)?,
        inf_attained: inf.attained,
        inf_at: inf.attained_at,
        sup: ext(&sup)?,
        sup_attained: sup.attained,
        sup_at: sup.attained_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwfun::parse_function;
    use crate::rational::{frac, int};

    fn f(src: &str) -> PiecewiseFunction {
        parse_function(src).unwrap()
    }

    #[test]
    fn peak_of_x_over_one_plus_x_squared() {
        let g = f("piecewise\n[0,inf): x/(1+x^2)");
        let e = g.extrema_on(&Interval::nonnegative()).unwrap();
        assert_eq!(e.sup, frac(1, 2).into());
        assert!(e.sup_attained);
        assert_eq!(e.sup_at, Some(int(1)));
        assert_eq!(e.inf, int(0).into());
        assert!(e.inf_attained);
        assert_eq!(e.inf_at, Some(int(0)));
    }

    #[test]
    fn unattained_limits() {
        let g = f("piecewise\n[0,inf): x/(1+x)");
        let e = g.extrema_on(&Interval::positive()).unwrap();
        assert_eq!(e.inf, int(0).into());
        assert!(!e.inf_attained);
        assert_eq!(e.sup, int(1).into());
        assert!(!e.sup_attained);
    }

    #[test]
    fn staircase_extrema() {
        let g = f("piecewise\n[0,1]: x\n(1,10]: 1\n(10,11): x - 9\n[11,inf): 2");
        let e = g.extrema_on(&Interval::nonnegative()).unwrap();
        assert_eq!((e.inf, e.inf_attained), (int(0).into(), true));
        assert_eq!((e.sup, e.sup_attained), (int(2).into(), true));
    }

    #[test]
    fn unbounded_sup() {
        let g = f("piecewise\n[0,inf): x^2");
        let e = g.extrema_on(&Interval::nonnegative()).unwrap();
        assert_eq!(e.sup, ExtRational::PosInf);
        assert!(!e.sup_attained);
    }

    #[test]
    fn pieces_split_at_critical_points() {
        let g = f("piecewise\n[0,inf): x/(1+x^2)");
        let pieces = g.monotone_pieces(&Interval::nonnegative());
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].trend, Trend::Increasing);
        assert_eq!(pieces[1].trend, Trend::Decreasing);
        assert_eq!(pieces[0].hi.loc, Loc::At(int(1)));
        // x^3 has a flat point but never changes direction
        let c = f("piecewise\n[0,inf): (x-1)^3 + 1");
        assert_eq!(c.monotone_pieces(&Interval::nonnegative()).len(), 1);
    }

    #[test]
    fn irrational_critical_points_compare_exactly() {
        // critical point at sqrt(2); maximum value 1/(2 sqrt 2 + ...) is irrational
        let g = f("piecewise\n[0,inf): x/(2+x^2)");
        let pieces = g.monotone_pieces(&Interval::nonnegative());
        assert!(matches!(pieces[0].hi.loc, Loc::Root(_)));
        let peak = pieces[0].sup_value();
        assert_eq!(compare_values(&peak, &Value::Exact(frac(35, 100))), Some(Ordering::Greater));
        assert_eq!(compare_values(&peak, &Value::Exact(frac(36, 100))), Some(Ordering::Less));
        assert_eq!(compare_values(&peak, &peak.clone()), Some(Ordering::Equal));
        assert!(g.extrema_on(&Interval::nonnegative()).is_err());
        // but the infimum question over a range avoiding the peak is fine
        let e = g.extrema_on(&Interval::closed(int(2), int(3))).unwrap();
        assert_eq!(e.sup, frac(1, 3).into());
    }

    #[test]
    fn doubled_values() {
        let v = Value::Exact(frac(2, 5));
        assert_eq!(v.times(&int(2)), Value::Exact(frac(4, 5)));
        assert_eq!(Value::Inf.times(&int(2)), Value::Inf);
    }
}

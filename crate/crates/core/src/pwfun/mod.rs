//! Piecewise rational functions on `[0, inf)`.
//!
//! A [`PiecewiseFunction`] is an ordered list of [`Segment`]s whose domains
//! partition `[0, inf)`. Each segment carries a quotient of rational
//! polynomials whose denominator is positive on the closure of its domain,
//! so one-sided limits at segment ends always exist and equal the formula
//! value there.

mod analysis;
mod parse;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::rational::{midpoint, ExtRational, Rational, Sign};
use crate::sturm::{self, SignSummary};

pub use analysis::{Extrema, IrrationalExtremumUnresolved};
pub(crate) use analysis::{compare_values, Loc, Piece, Trend};
pub use parse::{parse_function, ParseError, MAX_DEGREE};

/// A nonempty interval of the real line with a finite left end.
/// Degenerate point intervals `[a, a]` are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "crate::rational::serde_q")]
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: ExtRational,
    pub hi_closed: bool,
}

impl Interval {
    /// Returns `None` for empty intervals or a closed infinite end.
    pub fn new(lo: Rational, lo_closed: bool, hi: ExtRational, hi_closed: bool) -> Option<Self> {
        match &hi {
            ExtRational::PosInf if hi_closed => None,
            ExtRational::Finite(h) if *h < lo => None,
            ExtRational::Finite(h) if *h == lo && !(lo_closed && hi_closed) => None,
            _ => Some(Interval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            }),
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval::new(lo, true, hi.into(), true).expect("closed interval with lo <= hi")
    }

    pub fn open(lo: Rational, hi: ExtRational) -> Self {
        Interval::new(lo, false, hi, false).expect("open interval with lo < hi")
    }

    pub fn point(x: Rational) -> Self {
        Interval::closed(x.clone(), x)
    }

    /// `[0, inf)`.
    pub fn nonnegative() -> Self {
        Interval::new(Rational::zero(), true, ExtRational::PosInf, false).unwrap()
    }

    /// `(0, inf)`.
    pub fn positive() -> Self {
        Interval::open(Rational::zero(), ExtRational::PosInf)
    }

    pub fn is_point(&self) -> bool {
        self.hi.finite() == Some(&self.lo)
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi.is_infinite()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = match &self.hi {
            ExtRational::PosInf => true,
            ExtRational::Finite(h) => {
                if self.hi_closed {
                    x <= h
                } else {
                    x < h
                }
            }
        };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, lo_closed, hi, hi_closed)
    }

    /// A rational point of the interior, or the point itself for `[a, a]`.
    pub fn sample(&self) -> Rational {
        match &self.hi {
            _ if self.is_point() => self.lo.clone(),
            ExtRational::Finite(h) => midpoint(&self.lo, h),
            ExtRational::PosInf => &self.lo + Rational::one(),
        }
    }

    /// Up to `k` distinct rational points of the interval, interior ones first.
    pub fn samples(&self, k: usize) -> Vec<Rational> {
        if self.is_point() {
            return vec![self.lo.clone()];
        }
        let step = match &self.hi {
            ExtRational::Finite(h) => (h - &self.lo) / Rational::from_integer((k as i64 + 1).into()),
            ExtRational::PosInf => Rational::one(),
        };
        (1..=k as i64)
            .map(|i| &self.lo + &step * Rational::from_integer(i.into()))
            .collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// One piece of a piecewise function: `numerator / denominator` on `domain`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub domain: Interval,
    pub numerator: Poly,
    pub denominator: Poly,
}

impl Segment {
    /// Formula value at `x`; also the one-sided limit when `x` is an open
    /// end of the domain.
    pub fn formula_at(&self, x: &Rational) -> Rational {
        self.numerator.eval(x) / self.denominator.eval(x)
    }

    /// Limit of the formula as `x -> inf`.
    pub fn limit_at_infinity(&self) -> ExtRational {
        let dn = self.numerator.degree();
        let dd = self.denominator.deg0();
        match dn {
            None => ExtRational::zero(),
            Some(n) if n > dd => ExtRational::PosInf,
            Some(n) if n == dd => (self.numerator.leading() / self.denominator.leading()).into(),
            Some(_) => ExtRational::zero(),
        }
    }

    /// Numerator of the derivative: `N'D - ND'`. Same sign as `f'` on the domain.
    pub fn derivative_numerator(&self) -> Poly {
        let (n, d) = (&self.numerator, &self.denominator);
        &(&n.derivative() * d) - &(n * &d.derivative())
    }

    /// Derivative value `(N'D - ND') / D^2` at `x`.
    pub fn derivative_at(&self, x: &Rational) -> Rational {
        let d = self.denominator.eval(x);
        self.derivative_numerator().eval(x) / (&d * &d)
    }

    /// Numerator of the second derivative, which shares its sign with `f''`
    /// wherever the denominator is positive:
    /// `(N''D - ND'')D - 2D'(N'D - ND')`.
    pub fn second_derivative_numerator(&self) -> Poly {
        let (n, d) = (&self.numerator, &self.denominator);
        let d1 = d.derivative();
        let first = &(&(&n.derivative().derivative() * d) - &(n * &d1.derivative())) * d;
        let second = (&d1 * &self.derivative_numerator()).scale(&Rational::from_integer(2.into()));
        &first - &second
    }

    /// Affine pieces have a constant denominator and a numerator of degree <= 1.
    pub fn is_affine(&self) -> bool {
        self.denominator.is_constant() && self.numerator.deg0() <= 1
    }

    /// `(intercept, slope)` for an affine segment.
    pub fn affine_coefficients(&self) -> Option<(Rational, Rational)> {
        if !self.is_affine() {
            return None;
        }
        let d = self.denominator.leading();
        Some((self.numerator.coeff(0) / &d, self.numerator.coeff(1) / &d))
    }

    pub fn is_constant_formula(&self) -> bool {
        self.derivative_numerator().is_zero()
    }
}

/// Which side a one-sided limit approaches from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("one-sided limit from the {side:?} at {at} is outside [0, inf)")]
pub struct OutOfDomain {
    pub at: ExtRational,
    pub side: Side,
}

/// A validated function `[0, inf) -> [0, inf)` given piecewise by
/// rational-function formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseFunction {
    segments: Vec<Segment>,
}

impl PiecewiseFunction {
    /// Wraps already-validated segments. Use [`parse_function`] for
    /// untrusted input.
    pub(crate) fn from_segments(segments: Vec<Segment>) -> Self {
        PiecewiseFunction { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment_index_at(&self, x: &Rational) -> usize {
        self.segments
            .iter()
            .position(|s| s.domain.contains(x))
            .unwrap_or_else(|| panic!("{x} is outside [0, inf)"))
    }

    /// Exact value `f(x)`. Panics if `x < 0`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.segments[self.segment_index_at(x)].formula_at(x)
    }

    /// Interior breakpoints: segment boundaries other than 0, in order.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for s in &self.segments {
            for b in [Some(&s.domain.lo), s.domain.hi.finite()].into_iter().flatten() {
                if !b.is_zero() && out.last() != Some(b) {
                    out.push(b.clone());
                }
            }
        }
        out
    }

    /// Breakpoints together with 0.
    pub fn grid_points(&self) -> Vec<Rational> {
        let mut pts = vec![Rational::zero()];
        pts.extend(self.breakpoints());
        pts
    }

    pub fn is_piecewise_affine(&self) -> bool {
        self.segments.iter().all(Segment::is_affine)
    }

    /// One-sided limit at `x`. `x = +inf` gives the limit at infinity
    /// (only from the left). A left limit at 0 or a right limit at `+inf`
    /// is out of domain.
    pub fn one_sided_limit(&self, x: &ExtRational, side: Side) -> Result<ExtRational, OutOfDomain> {
        let out = || OutOfDomain { at: x.clone(), side };
        match (x, side) {
            (ExtRational::PosInf, Side::Left) => Ok(self.segments.last().unwrap().limit_at_infinity()),
            (ExtRational::PosInf, Side::Right) => Err(out()),
            (ExtRational::Finite(x), _) if x.is_zero() && side == Side::Left => Err(out()),
            (ExtRational::Finite(x), _) if *x < Rational::zero() => Err(out()),
            (ExtRational::Finite(x), Side::Left) => {
                let seg = self
                    .segments
                    .iter()
                    .find(|s| s.domain.lo < *x && ExtRational::Finite(x.clone()) <= s.domain.hi)
                    .ok_or_else(out)?;
                Ok(seg.formula_at(x).into())
            }
            (ExtRational::Finite(x), Side::Right) => {
                let seg = self
                    .segments
                    .iter()
                    .find(|s| s.domain.lo <= *x && ExtRational::Finite(x.clone()) < s.domain.hi)
                    .ok_or_else(out)?;
                Ok(seg.formula_at(x).into())
            }
        }
    }

    /// Exact infimum and supremum over `interval` (which must lie in `[0, inf)`).
    pub fn extrema_on(&self, interval: &Interval) -> Result<Extrema, IrrationalExtremumUnresolved> {
        analysis::extrema_on(self, interval)
    }

    pub(crate) fn monotone_pieces(&self, interval: &Interval) -> Vec<Piece> {
        analysis::monotone_pieces(self, interval)
    }
}

impl fmt::Display for PiecewiseFunction {
    /// Canonical DSL text; parsing it back yields an equal function.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "piecewise")?;
        for s in &self.segments {
            if s.denominator == Poly::one() {
                writeln!(f, "{}: {}", s.domain, s.numerator)?;
            } else {
                writeln!(f, "{}: ({}) / ({})", s.domain, s.numerator, s.denominator)?;
            }
        }
        Ok(())
    }
}

/// Sign of `p` on the interior of `interval`; for a point interval, the
/// sign at that point.
pub fn poly_sign_on_interval(p: &Poly, interval: &Interval) -> SignSummary {
    if interval.is_point() {
        return match p.sign_at(&interval.lo) {
            Sign::Positive => SignSummary::AlwaysPositive,
            Sign::Negative => SignSummary::AlwaysNegative,
            Sign::Zero => SignSummary::AlwaysZero,
        };
    }
    sturm::sign_on_open(p, &interval.lo, &interval.hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn f(src: &str) -> PiecewiseFunction {
        parse_function(src).unwrap()
    }

    #[test]
    fn evaluates_fixture_points() {
        assert_eq!(f("piecewise\n[0,inf): x / (1 + x)").eval(&int(1)), frac(1, 2));
        let stair = f("piecewise\n[0,1]: x\n(1,10]: 1\n(10,11): x - 9\n[11,inf): 2");
        assert_eq!(stair.eval(&frac(21, 2)), frac(3, 2));
        let ex55 = f("piecewise\n[0,1]: x\n(1,inf): 1/2");
        assert_eq!(ex55.eval(&frac(4, 3)), frac(1, 2));
    }

    #[test]
    fn one_sided_limits() {
        let g = f("piecewise\n[0,1): x\n[1,inf): 2");
        assert_eq!(g.one_sided_limit(&int(1).into(), Side::Left).unwrap(), int(1).into());
        assert_eq!(g.eval(&int(1)), int(2));
        let h = f("piecewise\n[0,inf): x/(1+x)");
        assert_eq!(h.one_sided_limit(&ExtRational::PosInf, Side::Left).unwrap(), int(1).into());
        let sq = f("piecewise\n[0,inf): x^2");
        assert_eq!(sq.one_sided_limit(&int(0).into(), Side::Right).unwrap(), int(0).into());
        assert_eq!(sq.one_sided_limit(&ExtRational::PosInf, Side::Left).unwrap(), ExtRational::PosInf);
        assert!(sq.one_sided_limit(&int(0).into(), Side::Left).is_err());
        assert!(sq.one_sided_limit(&ExtRational::PosInf, Side::Right).is_err());
    }

    #[test]
    fn sign_examples() {
        let p = Poly::new(vec![int(1), int(0), int(-1)]);
        assert_eq!(poly_sign_on_interval(&p, &Interval::open(int(0), int(1).into())), SignSummary::AlwaysPositive);
        assert_eq!(
            poly_sign_on_interval(&p, &Interval::open(int(1), ExtRational::PosInf)),
            SignSummary::AlwaysNegative
        );
        assert_eq!(poly_sign_on_interval(&Poly::zero(), &Interval::nonnegative()), SignSummary::AlwaysZero);
    }

    #[test]
    fn interval_intersections() {
        let a = Interval::new(int(0), true, int(2).into(), false).unwrap();
        let b = Interval::new(int(1), false, ExtRational::PosInf, false).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c, Interval::open(int(1), int(2).into()));
        assert!(Interval::point(int(2)).intersect(&a).is_none());
        assert!(Interval::new(int(1), true, int(1).into(), false).is_none());
    }

    #[test]
    fn breakpoints_skip_zero() {
        let stair = f("piecewise\n[0,1]: x\n(1,10]: 1\n(10,11): x - 9\n[11,inf): 2");
        assert_eq!(stair.breakpoints(), vec![int(1), int(10), int(11)]);
        let step = f("piecewise\n[0,0]: 0\n(0,inf): 3");
        assert!(step.breakpoints().is_empty());
    }
}

//! Exact real-root isolation and sign analysis via Sturm sequences.
//!
//! All work happens on the square-free part of the input, so every root
//! reported here is simple for the polynomial carried by [`IsolatedRoot`].
//! Isolating intervals have rational endpoints; a root is flagged exact
//! when it is rational (detected with the leading-coefficient test in
//! [`IsolatedRoot::settle_rationality`]).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::rational::{midpoint, ExtRational, Rational, Sign};

pub struct SturmChain {
    seq: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![p.clone()];
        if p.deg0() == 0 {
            return SturmChain { seq };
        }
        seq.push(p.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        SturmChain { seq }
    }

    fn variations<I: Iterator<Item = Sign>>(signs: I) -> usize {
        let mut last = Sign::Zero;
        let mut count = 0;
        for s in signs.filter(|s| *s != Sign::Zero) {
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self) -> usize {
        Self::variations(self.seq.iter().map(Poly::sign_at_infinity))
    }

    /// Number of distinct roots in `(a, b]`, for square-free input.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// A real root of a square-free polynomial, isolated in the open
/// interval `(lo, hi)` or known exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsolatedRoot {
    #[serde(skip)]
    poly: Poly,
    #[serde(with = "crate::rational::serde_q")]
    pub lo: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub hi: Rational,
    #[serde(with = "crate::rational::serde_q::opt")]
    pub exact: Option<Rational>,
}

impl IsolatedRoot {
    fn exact(poly: &Poly, r: Rational) -> Self {
        IsolatedRoot {
            poly: poly.clone(),
            lo: r.clone(),
            hi: r.clone(),
            exact: Some(r),
        }
    }

    fn bracketed(poly: &Poly, lo: Rational, hi: Rational) -> Self {
        IsolatedRoot {
            poly: poly.clone(),
            lo,
            hi,
            exact: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Left boundary usable for gap construction.
    fn left(&self) -> &Rational {
        self.exact.as_ref().unwrap_or(&self.lo)
    }

    fn right(&self) -> &Rational {
        self.exact.as_ref().unwrap_or(&self.hi)
    }

    /// Halve the isolating interval. No-op for exact roots.
    pub fn refine(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let m = midpoint(&self.lo, &self.hi);
        let sm = self.poly.sign_at(&m);
        if sm == Sign::Zero {
            *self = IsolatedRoot::exact(&self.poly, m);
        } else if sm == self.poly.sign_at(&self.hi) {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    /// Decide whether the root is rational. A rational root `p/q` of an
    /// integer polynomial with leading coefficient `L` has `q | L`, so
    /// `L * root` is an integer; once the interval is narrower than `1/L`
    /// there is at most one candidate to test.
    pub fn settle_rationality(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let ints = self.poly.primitive_integer();
        let lead = Rational::from_integer(ints.last().cloned().unwrap_or_else(BigInt::one));
        while (&self.hi - &self.lo) * &lead >= Rational::one() {
            self.refine();
            if self.exact.is_some() {
                return;
            }
        }
        let k = (&self.lo * &lead).floor() + Rational::one();
        if k < &self.hi * &lead {
            let candidate = k / &lead;
            if self.poly.eval(&candidate).is_zero() {
                *self = IsolatedRoot::exact(&self.poly, candidate);
            }
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }
}

/// A maximal root-free open subinterval between consecutive roots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    #[serde(with = "crate::rational::serde_q")]
    pub lo: Rational,
    pub hi: ExtRational,
    pub sign: Sign,
    /// A rational point strictly inside the gap.
    #[serde(with = "crate::rational::serde_q")]
    pub sample: Rational,
}

/// Roots of `p` inside an open interval together with the sign of `p`
/// on each root-free piece. `gaps.len() == roots.len() + 1`; the bounds
/// of each gap are rational points that strictly separate it from the
/// neighbouring isolating intervals (so gap `i` lies inside the true
/// open interval between roots `i-1` and `i`).
#[derive(Debug, Clone, PartialEq)]
pub struct SignPattern {
    pub roots: Vec<IsolatedRoot>,
    pub gaps: Vec<Gap>,
}

/// Sign classification of a polynomial on the interior of an interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignSummary {
    AlwaysPositive,
    AlwaysNegative,
    AlwaysZero,
    /// At least one root in the interior. `roots` are isolating intervals;
    /// `gap_signs[i]` is the sign between root `i-1` and root `i`.
    Mixed {
        roots: Vec<IsolatedRoot>,
        gap_signs: Vec<Sign>,
    },
}

impl SignSummary {
    pub fn never_negative(&self) -> bool {
        match self {
            SignSummary::AlwaysNegative => false,
            SignSummary::Mixed { gap_signs, .. } => !gap_signs.contains(&Sign::Negative),
            _ => true,
        }
    }

    pub fn never_positive(&self) -> bool {
        match self {
            SignSummary::AlwaysPositive => false,
            SignSummary::Mixed { gap_signs, .. } => !gap_signs.contains(&Sign::Positive),
            _ => true,
        }
    }
}

impl From<&SignPattern> for SignSummary {
    fn from(pattern: &SignPattern) -> Self {
        if pattern.roots.is_empty() {
            return match pattern.gaps.first().map(|g| g.sign) {
                Some(Sign::Positive) => SignSummary::AlwaysPositive,
                Some(Sign::Negative) => SignSummary::AlwaysNegative,
                _ => SignSummary::AlwaysZero,
            };
        }
        SignSummary::Mixed {
            roots: pattern.roots.clone(),
            gap_signs: pattern.gaps.iter().map(|g| g.sign).collect(),
        }
    }
}

/// Isolate the roots of `p` in the open interval `(lo, hi)` and classify
/// its sign between them. The zero polynomial yields no roots and a
/// single zero-signed gap. Requires `lo < hi`.
pub fn sign_pattern(p: &Poly, lo: &Rational, hi: &ExtRational) -> SignPattern {
    let sample_in = |a: &Rational, b: &ExtRational| match b {
        ExtRational::Finite(b) => midpoint(a, b),
        ExtRational::PosInf => a + Rational::one(),
    };
    if p.deg0() == 0 {
        let sample = sample_in(lo, hi);
        return SignPattern {
            roots: Vec::new(),
            gaps: vec![Gap {
                lo: lo.clone(),
                hi: hi.clone(),
                sign: p.sign_at(&sample),
                sample,
            }],
        };
    }
    let q = p.squarefree();
    let mut roots = isolate(&q, lo, hi);
    separate(&mut roots, lo, hi);
    for r in roots.iter_mut() {
        r.settle_rationality();
    }
    separate(&mut roots, lo, hi);

    let mut gaps = Vec::with_capacity(roots.len() + 1);
    let mut left = lo.clone();
    for r in &roots {
        let right = r.left().clone();
        let sample = midpoint(&left, &right);
        gaps.push(Gap {
            sign: p.sign_at(&sample),
            lo: left,
            hi: ExtRational::Finite(right),
            sample,
        });
        left = r.right().clone();
    }
    let sample = sample_in(&left, hi);
    gaps.push(Gap {
        sign: p.sign_at(&sample),
        lo: left,
        hi: hi.clone(),
        sample,
    });
    SignPattern { roots, gaps }
}

/// Sign summary of `p` on the interior `(lo, hi)`.
pub fn sign_on_open(p: &Poly, lo: &Rational, hi: &ExtRational) -> SignSummary {
    SignSummary::from(&sign_pattern(p, lo, hi))
}

/// Root isolation by Sturm-count bisection on `(lo, hi)`.
fn isolate(q: &Poly, lo: &Rational, hi: &ExtRational) -> Vec<IsolatedRoot> {
    let chain = SturmChain::new(q);
    let (top, exclude_top) = match hi {
        ExtRational::Finite(h) => (h.clone(), true),
        ExtRational::PosInf => {
            let bound = q.root_bound();
            (std::cmp::max(bound, lo.clone()) + Rational::one(), false)
        }
    };
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), top.clone(), chain.count(lo, &top))];
    while let Some((l, h, c)) = stack.pop() {
        if c == 0 {
            continue;
        }
        let h_is_root = q.eval(&h).is_zero();
        if c == 1 {
            if h_is_root {
                if !(exclude_top && h == top) {
                    out.push(IsolatedRoot::exact(q, h));
                }
            } else {
                out.push(IsolatedRoot::bracketed(q, l, h));
            }
            continue;
        }
        let m = midpoint(&l, &h);
        let left = chain.count(&l, &m);
        stack.push((m.clone(), h, c - left));
        stack.push((l, m, left));
    }
    out.sort_by(|a, b| a.left().cmp(b.left()));
    out
}

/// Refine until consecutive isolating intervals (and the interval ends)
/// are strictly separated, so every gap has nonempty interior.
fn separate(roots: &mut [IsolatedRoot], lo: &Rational, hi: &ExtRational) {
    if let Some(first) = roots.first_mut() {
        while first.left() <= lo {
            first.refine();
        }
    }
    if let (Some(last), ExtRational::Finite(h)) = (roots.last_mut(), hi) {
        while last.right() >= h {
            last.refine();
        }
    }
    for i in 1..roots.len() {
        while roots[i - 1].right() >= roots[i].left() {
            if roots[i - 1].is_exact() {
                roots[i].refine();
            } else if roots[i].is_exact() {
                roots[i - 1].refine();
            } else {
                roots[i - 1].refine();
                roots[i].refine();
            }
        }
    }
}

/// All real roots of `p` in `(lo, hi)`, refined until each irrational
/// interval is narrower than `width`.
pub fn roots_in(p: &Poly, lo: &Rational, hi: &ExtRational, width: &Rational) -> Vec<IsolatedRoot> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut roots = sign_pattern(p, lo, hi).roots;
    for r in roots.iter_mut() {
        while !r.is_exact() && &(&r.hi - &r.lo) >= width {
            r.refine();
        }
    }
    roots
}

/// True when `p` vanishes identically.
pub fn is_zero_poly(p: &Poly) -> bool {
    p.coeffs().iter().all(Zero::is_zero)
}

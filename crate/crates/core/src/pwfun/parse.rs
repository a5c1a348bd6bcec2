//! Parser for the function DSL.
//!
//! ```text
//! piecewise
//! [0,1]: x            # comments run to end of line
//! (1,inf): 1/2
//! ```
//!
//! Each segment line is `INTERVAL : FORMULA`. Formulas are built from
//! `x`, rational literals (`p/q`, integers, decimals), `+ - * / ^` and
//! parentheses; juxtaposition (`2x`) multiplies. The result must be a
//! quotient of polynomials of degree at most [`MAX_DEGREE`].

use num_traits::{Signed, Zero};

use super::{Interval, PiecewiseFunction, Segment};
use crate::poly::Poly;
use crate::rational::{parse_rational, ExtRational, Rational};
use crate::sturm::SignSummary;

pub const MAX_DEGREE: usize = 8;
const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: segments do not partition [0, inf): {msg}")]
    DomainGap { line: usize, msg: String },
    #[error("line {line}: formula takes negative values on {domain}")]
    NegativeValue { line: usize, domain: String },
    #[error("line {line}: denominator vanishes on the closure of {domain}")]
    Pole { line: usize, domain: String },
    #[error("line {line}: degree {degree} exceeds the cap of {MAX_DEGREE}")]
    Degree { line: usize, degree: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::DomainGap { line, .. }
            | ParseError::NegativeValue { line, .. }
            | ParseError::Pole { line, .. }
            | ParseError::Degree { line, .. } => *line,
        }
    }
}

/// Parse and validate DSL source.
pub fn parse_function(text: &str) -> Result<PiecewiseFunction, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    match lines.next() {
        Some((_, l)) if l.trim() == "piecewise" => {}
        Some((n, l)) => {
            return Err(ParseError::Syntax {
                line: n,
                col: 1 + l.len() - l.trim_start().len(),
                msg: "expected header `piecewise`".into(),
            })
        }
        None => {
            return Err(ParseError::Syntax {
                line: 1,
                col: 1,
                msg: "empty input; expected header `piecewise`".into(),
            })
        }
    }

    let mut parsed = Vec::new();
    for (n, l) in lines {
        parsed.push((n, parse_segment_line(n, l)?));
    }
    check_partition(&parsed)?;
    let segments = parsed
        .into_iter()
        .map(|(n, seg)| validate_segment(n, seg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PiecewiseFunction::from_segments(segments))
}

fn parse_segment_line(line: usize, text: &str) -> Result<Segment, ParseError> {
    let colon = text.find(':').ok_or_else(|| ParseError::Syntax {
        line,
        col: text.len().max(1),
        msg: "expected `INTERVAL : FORMULA`".into(),
    })?;
    let domain = parse_interval(line, &text[..colon])?;
    let formula_col = colon + 2;
    let (numerator, denominator) = parse_formula(line, formula_col, &text[colon + 1..])?;
    for p in [&numerator, &denominator] {
        if p.deg0() > MAX_DEGREE {
            return Err(ParseError::Degree { line, degree: p.deg0() });
        }
    }
    Ok(Segment {
        domain,
        numerator,
        denominator,
    })
}

fn parse_interval(line: usize, raw: &str) -> Result<Interval, ParseError> {
    let lead = raw.len() - raw.trim_start().len();
    let t = raw.trim();
    let err = |col: usize, msg: &str| ParseError::Syntax {
        line,
        col: lead + col + 1,
        msg: msg.to_string(),
    };
    let lo_closed = match t.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(err(0, "interval must start with `[` or `(`")),
    };
    let hi_closed = match t.chars().last() {
        Some(']') if t.len() > 1 => true,
        Some(')') if t.len() > 1 => false,
        _ => return Err(err(t.len().saturating_sub(1), "interval must end with `]` or `)`")),
    };
    let body = &t[1..t.len() - 1];
    let comma = body.find(',').ok_or_else(|| err(1, "expected `,` between interval ends"))?;
    let lo = parse_rational(&body[..comma]).map_err(|e| err(1, &e.to_string()))?;
    let hi_text = body[comma + 1..].trim();
    let hi = if hi_text == "inf" {
        ExtRational::PosInf
    } else {
        ExtRational::Finite(parse_rational(hi_text).map_err(|e| err(comma + 2, &e.to_string()))?)
    };
    if lo.is_negative() {
        return Err(ParseError::DomainGap {
            line,
            msg: format!("left end {lo} is negative"),
        });
    }
    if hi.is_infinite() && hi_closed {
        return Err(err(t.len() - 1, "an infinite end must be open"));
    }
    Interval::new(lo, lo_closed, hi, hi_closed).ok_or_else(|| ParseError::DomainGap {
        line,
        msg: format!("interval {t} is empty"),
    })
}

fn check_partition(segments: &[(usize, Segment)]) -> Result<(), ParseError> {
    let gap = |line: usize, msg: String| ParseError::DomainGap { line, msg };
    let Some((first_line, first)) = segments.first() else {
        return Err(gap(1, "no segments".into()));
    };
    if !first.domain.lo.is_zero() || !first.domain.lo_closed {
        return Err(gap(*first_line, format!("first segment {} must start at [0", first.domain)));
    }
    for pair in segments.windows(2) {
        let ((_, a), (line, b)) = (&pair[0], &pair[1]);
        let Some(a_hi) = a.domain.hi.finite() else {
            return Err(gap(*line, format!("segment {} follows an unbounded segment", b.domain)));
        };
        match a_hi.cmp(&b.domain.lo) {
            std::cmp::Ordering::Less => {
                return Err(gap(*line, format!("gap between {} and {}", a.domain, b.domain)))
            }
            std::cmp::Ordering::Greater => {
                return Err(gap(*line, format!("{} overlaps {}", b.domain, a.domain)))
            }
            std::cmp::Ordering::Equal => {}
        }
        if a.domain.hi_closed == b.domain.lo_closed {
            let what = if a.domain.hi_closed { "claimed by both" } else { "claimed by neither" };
            return Err(gap(*line, format!("breakpoint {a_hi} is {what} {} and {}", a.domain, b.domain)));
        }
    }
    let (last_line, last) = segments.last().unwrap();
    if !last.domain.hi.is_infinite() {
        return Err(gap(*last_line, format!("last segment {} must extend to inf", last.domain)));
    }
    Ok(())
}

/// Checks the denominator has a fixed sign on the closure of the domain
/// (flipping both polynomials when it is negative) and that the values
/// are nonnegative.
fn validate_segment(line: usize, mut seg: Segment) -> Result<Segment, ParseError> {
    let domain = seg.domain.clone();
    let pole = || ParseError::Pole {
        line,
        domain: domain.to_string(),
    };
    let ends: Vec<Rational> = [Some(domain.lo.clone()), domain.hi.finite().cloned()]
        .into_iter()
        .flatten()
        .collect();
    if ends.iter().any(|e| seg.denominator.eval(e).is_zero()) {
        return Err(pole());
    }
    let den_sign = if domain.is_point() {
        seg.denominator.eval(&domain.lo).is_positive()
    } else {
        match super::poly_sign_on_interval(&seg.denominator, &domain) {
            SignSummary::AlwaysPositive => true,
            SignSummary::AlwaysNegative => false,
            _ => return Err(pole()),
        }
    };
    let scale = seg.denominator.leading().abs().recip();
    let scale = if den_sign { scale } else { -scale };
    seg.numerator = seg.numerator.scale(&scale);
    seg.denominator = seg.denominator.scale(&scale);

    let negative = || ParseError::NegativeValue {
        line,
        domain: domain.to_string(),
    };
    let closed_ends = [
        domain.lo_closed.then(|| domain.lo.clone()),
        if domain.hi_closed { domain.hi.finite().cloned() } else { None },
    ];
    if closed_ends
        .iter()
        .flatten()
        .any(|e| seg.numerator.eval(e).is_negative())
    {
        return Err(negative());
    }
    if !domain.is_point() && !super::poly_sign_on_interval(&seg.numerator, &domain).never_negative() {
        return Err(negative());
    }
    Ok(seg)
}

// ---------------------------------------------------------------------------
// formula expressions

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(line: usize, col0: usize, s: &str) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let tok = match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'x' => Tok::X,
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let q = parse_rational(&lit).map_err(|e| ParseError::Syntax {
                    line,
                    col,
                    msg: e.to_string(),
                })?;
                toks.push((Tok::Num(q), col));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        toks.push((tok, col));
        i += 1;
    }
    Ok(Lexer { toks })
}

/// A quotient of polynomials under construction.
#[derive(Debug, Clone)]
struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    fn poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if den.is_constant() {
            let k = den.leading().recip();
            RatFun::poly(num.scale(&k))
        } else {
            RatFun { num, den }
        }
    }

    fn add(&self, o: &RatFun, negate: bool) -> RatFun {
        let rhs = if negate { -&o.num } else { o.num.clone() };
        if self.den == o.den {
            return RatFun::normalized(&self.num + &rhs, self.den.clone());
        }
        RatFun::normalized(&(&self.num * &o.den) + &(&rhs * &self.den), &self.den * &o.den)
    }

    fn mul(&self, o: &RatFun) -> RatFun {
        RatFun::normalized(&self.num * &o.num, &self.den * &o.den)
    }

    fn div(&self, o: &RatFun) -> Option<RatFun> {
        if o.num.is_zero() {
            return None;
        }
        Some(RatFun::normalized(&self.num * &o.den, &self.den * &o.num))
    }

    fn pow(&self, e: u32) -> RatFun {
        RatFun::normalized(self.num.pow(e), self.den.pow(e))
    }
}

struct ExprParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                RatFun::poly(Poly::zero()).add(&self.term()?, true)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, false);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let rhs = self.power()?;
                    acc = acc.div(&rhs).ok_or(ParseError::Syntax {
                        line: self.line,
                        col,
                        msg: "division by zero".into(),
                    })?;
                }
                Some(Tok::Num(_)) | Some(Tok::X) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFun, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        let exponent = match self.peek() {
            Some(Tok::Num(q)) if q.is_integer() && !q.is_negative() => q.to_integer(),
            _ => return Err(self.err("exponent must be a nonnegative integer")),
        };
        self.pos += 1;
        let e = u32::try_from(&exponent)
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or(ParseError::Syntax {
                line: self.line,
                col,
                msg: format!("exponent {exponent} is too large"),
            })?;
        Ok(base.pow(e))
    }

    fn primary(&mut self) -> Result<RatFun, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(RatFun::poly(Poly::constant(q)))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(RatFun::poly(Poly::x()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                let inner = self.power()?;
                Ok(RatFun::poly(Poly::zero()).add(&inner, true))
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of formula")),
        }
    }
}

fn parse_formula(line: usize, col0: usize, text: &str) -> Result<(Poly, Poly), ParseError> {
    let lexer = lex(line, col0, text)?;
    let mut p = ExprParser {
        toks: &lexer.toks,
        pos: 0,
        line,
        end_col: col0 + text.len(),
    };
    let rf = p.expr()?;
    if p.pos != lexer.toks.len() {
        return Err(p.err("trailing input after formula"));
    }
    Ok((rf.num, rf.den))
}

//! Test corpus: the named fixtures and a seeded generator of random
//! piecewise-affine functions.

use std::fmt::Write;

use num_traits::Zero;

use crate::pwfun::{parse_function, PiecewiseFunction};
use crate::rational::Rational;
use crate::rng::Lcg;

/// `(name, DSL source)` for every file in `fixtures/`.
pub const FIXTURES: &[(&str, &str)] = &[
    ("x_over_1px", include_str!("../../../fixtures/x_over_1px.fn")),
    ("min1x", include_str!("../../../fixtures/min1x.fn")),
    ("xsq", include_str!("../../../fixtures/xsq.fn")),
    ("staircase", include_str!("../../../fixtures/staircase.fn")),
    ("ex55", include_str!("../../../fixtures/ex55.fn")),
    ("step", include_str!("../../../fixtures/step.fn")),
    ("g65", include_str!("../../../fixtures/g65.fn")),
    ("x_over_1px2", include_str!("../../../fixtures/x_over_1px2.fn")),
    ("cvariant_0.1", include_str!("../../../fixtures/cvariant_0.1.fn")),
    ("cvariant_0.4", include_str!("../../../fixtures/cvariant_0.4.fn")),
    ("cvariant_0.49", include_str!("../../../fixtures/cvariant_0.49.fn")),
    ("cvariant_0.5", include_str!("../../../fixtures/cvariant_0.5.fn")),
    ("cvariant_0.6", include_str!("../../../fixtures/cvariant_0.6.fn")),
    ("cvariant_1", include_str!("../../../fixtures/cvariant_1.fn")),
];

/// Parse a fixture by name. Panics on an unknown name.
pub fn fixture(name: &str) -> PiecewiseFunction {
    let (_, src) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture named {name}"));
    parse_function(src).expect("fixtures parse")
}

pub fn fixtures() -> Vec<(&'static str, PiecewiseFunction)> {
    FIXTURES
        .iter()
        .map(|(n, src)| (*n, parse_function(src).expect("fixtures parse")))
        .collect()
}

fn value(rng: &mut Lcg) -> Rational {
    if rng.below(12) == 0 {
        Rational::zero()
    } else {
        rng.scaled(4)
    }
}

/// DSL source of a random piecewise-affine function with up to four
/// segments. Mostly amenable, with occasional jumps, plateaus, drops,
/// isolated values at 0 and zeros.
pub fn random_affine_source(seed: u64) -> String {
    let mut rng = Lcg::new(seed);
    let pieces = 1 + rng.below(4) as usize;
    let mut cuts = Vec::new();
    let mut x = Rational::zero();
    for _ in 1..pieces {
        x += rng.scaled(3);
        cuts.push(x.clone());
    }
    let mut src = String::from("piecewise\n");
    let mut open = "[";
    let mut lo = Rational::zero();
    let mut prev: Option<Rational> = None;
    if rng.below(6) == 0 {
        src.push_str("[0,0]: 0\n");
        open = "(";
        prev = Some(value(&mut rng));
    }
    for i in 0..pieces {
        let v_lo = match &prev {
            None if rng.below(8) == 0 => value(&mut rng),
            None => Rational::zero(),
            Some(p) if rng.coin() => p.clone(),
            Some(_) => value(&mut rng),
        };
        let (close, next_open, q) = match cuts.get(i) {
            Some(hi) => {
                let v_hi = value(&mut rng);
                let q = (&v_hi - &v_lo) / (hi - &lo);
                prev = Some(v_hi);
                let (c, n) = if rng.coin() { ("]", "(") } else { (")", "[") };
                (format!("{hi}{c}"), n, q)
            }
            None => {
                let q = if rng.coin() { Rational::zero() } else { rng.scaled(2) };
                ("inf)".to_string(), "", q)
            }
        };
        let p = &v_lo - &q * &lo;
        writeln!(src, "{open}{lo},{close}: ({q})*x + ({p})").unwrap();
        open = next_open;
        if let Some(hi) = cuts.get(i) {
            lo = hi.clone();
        }
    }
    src
}

pub fn random_affine(seed: u64) -> PiecewiseFunction {
    let src = random_affine_source(seed);
    parse_function(&src).unwrap_or_else(|e| panic!("generated source does not parse: {e}\n{src}"))
}

/// `count` random piecewise-affine functions from consecutive seeds.
pub fn random_affine_corpus(count: usize, seed: u64) -> Vec<PiecewiseFunction> {
    (0..count as u64).map(|i| random_affine(seed.wrapping_add(i))).collect()
}

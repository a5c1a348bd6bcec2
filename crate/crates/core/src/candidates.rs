//! Candidate arguments for witness searches.
//!
//! Violations of piecewise conditions cluster at breakpoints, so the
//! grid starts there and grows through simple combinations of them. The
//! order is fixed, which makes the first witness found deterministic.

use num_traits::{One, Zero};

use crate::pwfun::PiecewiseFunction;
use crate::rational::{int, midpoint, Rational};
use crate::rng::Lcg;

pub(crate) const MAX_CANDIDATES: usize = 64;

/// Breakpoints (with 0), then 1, 2, 10, then fractions and overshoots of
/// each breakpoint, then pairwise sums and differences, midpoints of
/// consecutive grid points, and each breakpoint plus 1.
pub(crate) fn candidate_points(f: &PiecewiseFunction) -> Vec<Rational> {
    let grid = f.grid_points();
    let betas: Vec<Rational> = grid.iter().filter(|b| !b.is_zero()).cloned().collect();
    let mut out: Vec<Rational> = Vec::new();
    let push = |x: Rational, out: &mut Vec<Rational>| {
        if x >= Rational::zero() && !out.contains(&x) && out.len() < MAX_CANDIDATES {
            out.push(x);
        }
    };
    for g in &grid {
        push(g.clone(), &mut out);
    }
    for k in [1, 2, 10] {
        push(int(k), &mut out);
    }
    for b in &betas {
        for k in 2..=4 {
            let part = b / int(k);
            push(part.clone(), &mut out);
            push(b + part, &mut out);
        }
    }
    for (i, x) in betas.iter().enumerate() {
        for y in &betas[i..] {
            push(x + y, &mut out);
            push(y - x, &mut out);
        }
    }
    for w in grid.windows(2) {
        push(midpoint(&w[0], &w[1]), &mut out);
    }
    for b in &betas {
        push(b + Rational::one(), &mut out);
    }
    out
}

/// Index pairs `(i, j)` with `pts[i] <= pts[j]`, grouped in rounds by
/// `max(i, j)` so that earlier candidates are combined first.
pub(crate) fn pairs_by_round(pts: &[Rational]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..pts.len()).flat_map(move |k| {
        (0..=k).flat_map(move |i| {
            let js: Vec<usize> = if i == k { (0..=k).collect() } else { vec![k] };
            js.into_iter()
                .map(move |j| (i, j))
                .filter(move |&(i, j)| pts[i] <= pts[j])
                .collect::<Vec<_>>()
        })
    })
}

/// Index triples `(i, j, l)` with `pts[j] <= pts[l]`, in rounds by the
/// largest index; within a round by `i`, then `j`, then `l`.
pub(crate) fn triples_by_round(pts: &[Rational]) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    (0..pts.len()).flat_map(move |k| {
        let mut round = Vec::new();
        for i in 0..=k {
            for j in 0..=k {
                for l in 0..=k {
                    if i.max(j).max(l) == k && pts[j] <= pts[l] {
                        round.push((i, j, l));
                    }
                }
            }
        }
        round.into_iter()
    })
}

/// A random triangle triplet: `b`, `c` from the pinned draw and `a`
/// between `|b - c|` and `b + c`.
pub(crate) fn random_triangle(rng: &mut Lcg) -> (Rational, Rational, Rational) {
    let b = rng.rational();
    let c = rng.rational();
    let lo = if b > c { &b - &c } else { &c - &b };
    let hi = &b + &c;
    let a = &lo + (hi - &lo) * rng.unit();
    (a, b, c)
}

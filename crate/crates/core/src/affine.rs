//! Exact decisions for piecewise-affine functions.
//!
//! Both questions have the form "is `g <= 0` on a region", where `g` is
//! built from `f` at a few linear combinations of the variables. Cutting
//! every such argument at the breakpoints of `f` splits the region into
//! cells on which `g` is affine. Each cell is a relatively open polyhedron
//! `F`; when it is nonempty its closure `P` is cut out by the same
//! constraints with strict inequalities relaxed, so the supremum of `g`
//! over `F` is the maximum over the vertices of `P`, unless some extreme
//! ray of `P` increases `g`.
//!
//! Emptiness is tested with one point: `y` = centroid of the vertices of
//! `P` plus the sum of its extreme rays lies in the relative interior of
//! `P`, which is contained in `F` whenever `F` is nonempty.

use num_traits::{One, Signed, Zero};

use crate::polytope::{dot, relative_interior_point, Constraint, Polyhedron};
use crate::pwfun::PiecewiseFunction;
use crate::rational::{pow2_inv, ExtRational, Rational};

/// A piece of the partition of `[0, inf)` by the breakpoints of `f`,
/// together with the affine formula `f(x) = p + q x` valid on it.
#[derive(Debug, Clone)]
struct Component {
    lo: Rational,
    hi: ExtRational,
    point: bool,
    p: Rational,
    q: Rational,
}

impl Component {
    fn contains(&self, x: &Rational) -> bool {
        if self.point {
            return *x == self.lo;
        }
        *x > self.lo && ExtRational::Finite(x.clone()) < self.hi
    }

    fn value(&self, x: &Rational) -> Rational {
        &self.p + &self.q * x
    }

    /// Supremum of the formula over the closure.
    fn sup(&self) -> ExtRational {
        match &self.hi {
            ExtRational::PosInf if self.q.is_positive() => ExtRational::PosInf,
            ExtRational::PosInf => self.value(&self.lo).into(),
            ExtRational::Finite(h) => std::cmp::max(self.value(&self.lo), self.value(h)).into(),
        }
    }

    /// Infimum over the closure, `None` for `-inf`.
    fn inf(&self) -> Option<Rational> {
        match &self.hi {
            ExtRational::PosInf if self.q.is_negative() => None,
            ExtRational::PosInf => Some(self.value(&self.lo)),
            ExtRational::Finite(h) => Some(std::cmp::min(self.value(&self.lo), self.value(h))),
        }
    }

    /// Constraints `lo <= coeffs . x <= hi` (equality for a point).
    fn constrain(&self, poly: &mut Polyhedron, coeffs: Vec<Rational>) {
        if self.point {
            poly.push(Constraint::eq(coeffs, self.lo.clone()));
            return;
        }
        let neg: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
        poly.push(Constraint::le(neg, -self.lo.clone()));
        if let ExtRational::Finite(h) = &self.hi {
            poly.push(Constraint::le(coeffs, h.clone()));
        }
    }
}

fn components(f: &PiecewiseFunction) -> Vec<Component> {
    let grid = f.grid_points();
    let mut out = Vec::new();
    let affine_at = |x: &Rational| {
        f.segments()[f.segment_index_at(x)]
            .affine_coefficients()
            .expect("piecewise-affine function")
    };
    for (i, b) in grid.iter().enumerate() {
        let (p, q) = affine_at(b);
        out.push(Component {
            lo: b.clone(),
            hi: b.clone().into(),
            point: true,
            p,
            q,
        });
        let hi: ExtRational = grid.get(i + 1).cloned().map(Into::into).unwrap_or(ExtRational::PosInf);
        let sample = match &hi {
            ExtRational::Finite(h) => (b + h) / Rational::from_integer(2.into()),
            ExtRational::PosInf => b + Rational::one(),
        };
        let (p, q) = affine_at(&sample);
        out.push(Component {
            lo: b.clone(),
            hi,
            point: false,
            p,
            q,
        });
    }
    out
}

/// `g(x) = constant + slope . x`.
struct Objective {
    constant: Rational,
    slope: Vec<Rational>,
}

impl Objective {
    fn at(&self, x: &[Rational]) -> Rational {
        &self.constant + dot(&self.slope, x)
    }
}

/// A point of the cell with `g > 0`, if the supremum over the cell is
/// positive. `in_cell` decides membership in the (relatively open) cell.
fn violation_in_cell(poly: &Polyhedron, g: &Objective, in_cell: impl Fn(&[Rational]) -> bool) -> Option<Vec<Rational>> {
    let vertices = poly.vertices();
    let rays = poly.rays();
    let y = relative_interior_point(&vertices, &rays, poly.dim)?;
    if !in_cell(&y) {
        return None;
    }
    let found = |z: Vec<Rational>| (in_cell(&z) && g.at(&z).is_positive()).then_some(z);
    if let Some(v) = vertices.iter().find(|v| g.at(v).is_positive()) {
        // walk from the interior point towards the vertex
        for k in 1..=256 {
            let t = Rational::one() - pow2_inv(k);
            let z: Vec<Rational> = y.iter().zip(v).map(|(yi, vi)| yi + (vi - yi) * &t).collect();
            if let Some(z) = found(z) {
                return Some(z);
            }
        }
        unreachable!("approach to a positive vertex must turn positive");
    }
    if let Some(r) = rays.iter().find(|r| dot(&g.slope, r).is_positive()) {
        for k in 0..=256 {
            let lambda = Rational::from_integer(num_bigint::BigInt::one() << k);
            let z: Vec<Rational> = y.iter().zip(r).map(|(yi, ri)| yi + ri * &lambda).collect();
            if let Some(z) = found(z) {
                return Some(z);
            }
        }
        unreachable!("an increasing ray must turn positive");
    }
    None
}

fn box_sup_nonpositive(sup: ExtRational, infs: &[Option<Rational>]) -> bool {
    let ExtRational::Finite(mut s) = sup else {
        return false;
    };
    for i in infs {
        match i {
            Some(v) => s -= v,
            None => return false,
        }
    }
    !s.is_positive()
}

/// Exact search for `a, b >= 0` with `f(a + b) > f(a) + f(b)`. Requires
/// every segment to be affine. Returns `None` iff `f` is subadditive.
pub fn subadditivity_violation(f: &PiecewiseFunction) -> Option<(Rational, Rational)> {
    let comps = components(f);
    let n = comps.len();
    for ia in 0..n {
        for ib in ia..n {
            for s in &comps {
                let (ca, cb) = (&comps[ia], &comps[ib]);
                if box_sup_nonpositive(s.sup(), &[ca.inf(), cb.inf()]) {
                    continue;
                }
                let mut poly = Polyhedron::new(2);
                let (one, zero) = (Rational::one(), Rational::zero());
                ca.constrain(&mut poly, vec![one.clone(), zero.clone()]);
                cb.constrain(&mut poly, vec![zero, one.clone()]);
                s.constrain(&mut poly, vec![one.clone(), one]);
                let g = Objective {
                    constant: &s.p - &ca.p - &cb.p,
                    slope: vec![&s.q - &ca.q, &s.q - &cb.q],
                };
                let in_cell = |x: &[Rational]| ca.contains(&x[0]) && cb.contains(&x[1]) && s.contains(&(&x[0] + &x[1]));
                if let Some(z) = violation_in_cell(&poly, &g, in_cell) {
                    return Some((z[0].clone(), z[1].clone()));
                }
            }
        }
    }
    None
}

/// Exact search for a triangle triplet `(a, b, c)` with `f(a) > f(b) + f(c)`.
/// Requires every segment to be affine. Returns `None` iff no such triplet
/// exists.
pub fn triangle_violation(f: &PiecewiseFunction) -> Option<(Rational, Rational, Rational)> {
    let comps = components(f);
    let n = comps.len();
    let int = |k: i64| Rational::from_integer(k.into());
    for ca in &comps {
        for ib in 0..n {
            // g is symmetric in b and c
            for ic in ib..n {
                let (cb, cc) = (&comps[ib], &comps[ic]);
                if box_sup_nonpositive(ca.sup(), &[cb.inf(), cc.inf()]) {
                    continue;
                }
                let mut poly = Polyhedron::new(3);
                ca.constrain(&mut poly, vec![int(1), int(0), int(0)]);
                cb.constrain(&mut poly, vec![int(0), int(1), int(0)]);
                cc.constrain(&mut poly, vec![int(0), int(0), int(1)]);
                poly.push(Constraint::le(vec![int(1), int(-1), int(-1)], int(0)));
                poly.push(Constraint::le(vec![int(-1), int(1), int(-1)], int(0)));
                poly.push(Constraint::le(vec![int(-1), int(-1), int(1)], int(0)));
                let g = Objective {
                    constant: &ca.p - &cb.p - &cc.p,
                    slope: vec![ca.q.clone(), -cb.q.clone(), -cc.q.clone()],
                };
                let in_cell = |x: &[Rational]| {
                    ca.contains(&x[0])
                        && cb.contains(&x[1])
                        && cc.contains(&x[2])
                        && x[0] <= &x[1] + &x[2]
                        && x[1] <= &x[0] + &x[2]
                        && x[2] <= &x[0] + &x[1]
                };
                if let Some(z) = violation_in_cell(&poly, &g, in_cell) {
                    return Some((z[0].clone(), z[1].clone(), z[2].clone()));
                }
            }
        }
    }
    None
}

//! Vertices and extreme rays of small pointed polyhedra, exactly.
//!
//! Dimensions here are 2 or 3 with about a dozen constraints, so plain
//! enumeration of active sets is fast enough and easy to trust.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    /// `coeffs . x = rhs` when set, else `coeffs . x <= rhs`.
    pub eq: bool,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint { coeffs, rhs, eq: false }
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint { coeffs, rhs, eq: true }
    }

    fn lhs(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    fn holds(&self, x: &[Rational]) -> bool {
        let l = self.lhs(x);
        if self.eq {
            l == self.rhs
        } else {
            l <= self.rhs
        }
    }

    fn holds_homogeneous(&self, r: &[Rational]) -> bool {
        let l = self.lhs(r);
        if self.eq {
            l.is_zero()
        } else {
            !l.is_positive()
        }
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `{x : every constraint holds}` in `dim` dimensions, assumed pointed.
#[derive(Debug, Clone, Default)]
pub(crate) struct Polyhedron {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Constraint) {
        debug_assert_eq!(c.coeffs.len(), self.dim);
        self.constraints.push(c);
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.holds(x))
    }

    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for subset in subsets(self.constraints.len(), self.dim) {
            let rows: Vec<&[Rational]> = subset.iter().map(|&i| self.constraints[i].coeffs.as_slice()).collect();
            let rhs: Vec<Rational> = subset.iter().map(|&i| self.constraints[i].rhs.clone()).collect();
            if let Some(x) = solve(&rows, &rhs) {
                if self.contains(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Extreme rays of the recession cone, each scaled so its largest
    /// absolute component is 1.
    pub fn rays(&self) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = Vec::new();
        if self.dim == 0 {
            return out;
        }
        for subset in subsets(self.constraints.len(), self.dim - 1) {
            let rows: Vec<&[Rational]> = subset.iter().map(|&i| self.constraints[i].coeffs.as_slice()).collect();
            let Some(n) = null_vector(&rows, self.dim) else {
                continue;
            };
            for r in [n.clone(), n.iter().map(|c| -c).collect()] {
                if self.constraints.iter().all(|c| c.holds_homogeneous(&r)) && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }
}

/// All `k`-element subsets of `0..n`, lexicographically.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Row-reduce `m` in place; returns pivot columns.
fn row_reduce(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = &*v / &lead;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                    *v = &*v - &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Unique solution of a square system, or `None` if singular.
pub(crate) fn solve(rows: &[&[Rational]], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.to_vec();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = row_reduce(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// A spanning vector of the null space when it is one-dimensional.
fn null_vector(rows: &[&[Rational]], dim: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.to_vec()).collect();
    let pivots = if m.is_empty() { Vec::new() } else { row_reduce(&mut m, dim) };
    if pivots.len() + 1 != dim {
        return None;
    }
    let free = (0..dim).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![Rational::zero(); dim];
    v[free] = Rational::one();
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = -m[r][free].clone();
    }
    let scale = v.iter().map(|c| c.abs()).max().unwrap();
    Some(v.into_iter().map(|c| c / &scale).collect())
}

/// A point of the relative interior: centroid of the vertices plus the
/// sum of the extreme rays. `None` for an empty polyhedron.
pub(crate) fn relative_interior_point(vertices: &[Vec<Rational>], rays: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    if vertices.is_empty() {
        return None;
    }
    let k = Rational::from_integer((vertices.len() as i64).into());
    let mut y = vec![Rational::zero(); dim];
    for v in vertices {
        for (acc, c) in y.iter_mut().zip(v) {
            *acc = &*acc + c;
        }
    }
    for acc in y.iter_mut() {
        *acc = &*acc / &k;
    }
    for r in rays {
        for (acc, c) in y.iter_mut().zip(r) {
            *acc = &*acc + c;
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unit_square_vertices() {
        let mut p = Polyhedron::new(2);
        p.push(Constraint::le(v(&[-1, 0]), int(0)));
        p.push(Constraint::le(v(&[0, -1]), int(0)));
        p.push(Constraint::le(v(&[1, 0]), int(1)));
        p.push(Constraint::le(v(&[0, 1]), int(1)));
        let mut vs = p.vertices();
        vs.sort();
        assert_eq!(vs, vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]);
        assert!(p.rays().is_empty());
        let y = relative_interior_point(&vs, &[], 2).unwrap();
        assert_eq!(y, vec![frac(1, 2), frac(1, 2)]);
    }

    #[test]
    fn orthant_has_two_rays() {
        let mut p = Polyhedron::new(2);
        p.push(Constraint::le(v(&[-1, 0]), int(0)));
        p.push(Constraint::le(v(&[0, -1]), int(0)));
        assert_eq!(p.vertices(), vec![v(&[0, 0])]);
        let mut rs = p.rays();
        rs.sort();
        assert_eq!(rs, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn triangle_cone_rays_in_three_dimensions() {
        // {a <= b + c, b <= a + c, c <= a + b} intersected with the orthant
        let mut p = Polyhedron::new(3);
        p.push(Constraint::le(v(&[1, -1, -1]), int(0)));
        p.push(Constraint::le(v(&[-1, 1, -1]), int(0)));
        p.push(Constraint::le(v(&[-1, -1, 1]), int(0)));
        let mut rs = p.rays();
        rs.sort();
        assert_eq!(rs, vec![v(&[0, 1, 1]), v(&[1, 0, 1]), v(&[1, 1, 0])]);
    }

    #[test]
    fn equalities_cut_dimension() {
        let mut p = Polyhedron::new(2);
        p.push(Constraint::eq(v(&[1, 1]), int(2)));
        p.push(Constraint::le(v(&[-1, 0]), int(0)));
        p.push(Constraint::le(v(&[0, -1]), int(0)));
        let mut vs = p.vertices();
        vs.sort();
        assert_eq!(vs, vec![v(&[0, 2]), v(&[2, 0])]);
        assert!(p.rays().is_empty());
    }

    #[test]
    fn infeasible_is_empty() {
        let mut p = Polyhedron::new(2);
        p.push(Constraint::le(v(&[1, 0]), int(-1)));
        p.push(Constraint::le(v(&[-1, 0]), int(0)));
        p.push(Constraint::le(v(&[0, -1]), int(0)));
        assert!(p.vertices().is_empty());
        assert!(relative_interior_point(&[], &[], 2).is_none());
    }
}

//! Finite distance spaces with exact rational distances.
//!
//! A [`DistanceMatrix`] only guarantees symmetry, a zero diagonal and
//! nonnegative entries. The metric axioms are checked by the validators:
//! (M1) distinct points have positive distance, (M2) symmetry, (M3) the
//! triangle inequality, and (U3) `d(x,y) <= max(d(x,z), d(z,y))`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pwfun::PiecewiseFunction;
use crate::rational::{parse_rational, ExtRational, Rational};
use crate::rng::Lcg;
use crate::verdict::{Evidence, Verdict};

/// Largest space the generators produce.
pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("empty matrix")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("row {row}, column {col}: cannot read `{text}` as a rational")]
    Parse { row: usize, col: usize, text: String },
    #[error("entry ({i}, {j}) differs from ({j}, {i})")]
    Asymmetric { i: usize, j: usize },
    #[error("diagonal entry ({i}, {i}) is not 0")]
    NonzeroDiagonal { i: usize },
    #[error("entry ({i}, {j}) is negative")]
    Negative { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinspaceError {
    #[error("f(0) = {f0} is not 0, so the image has a nonzero diagonal")]
    NonAmenableDiagonal { f0: Rational },
    #[error("({a}, {b}, {c}) cannot be realized as a {mode} space: {reason}")]
    NotRealizable {
        a: Rational,
        b: Rational,
        c: Rational,
        mode: Mode,
        reason: &'static str,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Square, symmetric, zero-diagonal, nonnegative rational matrix. Indices
/// are 0-based in the API and 1-based in printed output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    d: Vec<Vec<Rational>>,
}

impl DistanceMatrix {
    pub fn new(d: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let n = d.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        for (row, r) in d.iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::Ragged {
                    row: row + 1,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            if !d[i][i].is_zero() {
                return Err(MatrixError::NonzeroDiagonal { i: i + 1 });
            }
            for j in 0..n {
                if d[i][j] != d[j][i] {
                    return Err(MatrixError::Asymmetric { i: i + 1, j: j + 1 });
                }
                if d[i][j].is_negative() {
                    return Err(MatrixError::Negative { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(DistanceMatrix { d })
    }

    /// Build from the upper triangle, row by row: `(0,1), (0,2), ..., (1,2), ...`.
    pub fn from_upper(n: usize, upper: &[Rational]) -> Result<Self, MatrixError> {
        let mut d = vec![vec![Rational::zero(); n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().cloned().unwrap_or_else(Rational::zero);
                d[i][j] = v.clone();
                d[j][i] = v;
            }
        }
        DistanceMatrix::new(d)
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.d
    }

    /// `n` lines of `n` comma-separated entries, each `p/q`, an integer or
    /// a decimal literal. Blank lines are ignored.
    pub fn from_csv(text: &str) -> Result<Self, MatrixError> {
        let mut rows = Vec::new();
        for (r, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let row = line
                .split(',')
                .enumerate()
                .map(|(c, cell)| {
                    parse_rational(cell).map_err(|_| MatrixError::Parse {
                        row: r + 1,
                        col: c + 1,
                        text: cell.trim().to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        DistanceMatrix::new(rows)
    }

    /// Canonical CSV: lowest-terms `p/q` (or plain integers), one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.d {
            let cells: Vec<String> = row.iter().map(|q| q.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn upper(&self) -> impl Iterator<Item = &Rational> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| &self.d[i][j]))
    }
}

impl fmt::Display for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

impl Serialize for DistanceMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.d.iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistanceMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        DistanceMatrix::new(parsed).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// axioms

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    M1,
    M2,
    M3,
    U3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A violated axiom at 0-based indices `(i, j)` and, for the three-point
/// axioms, the intermediate point `k`.
///
/// * M1: `lhs = d(i,j)`, `rhs = 0`; broken when `i != j` and `lhs = 0`, or
///   `i = j` and `lhs != 0`.
/// * M2: `lhs = d(i,j)`, `rhs = d(j,i)`, unequal.
/// * M3: `lhs = d(i,j) > rhs = d(i,k) + d(k,j)`.
/// * U3: `lhs = d(i,j) > rhs = max(d(i,k), d(k,j))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub i: usize,
    pub j: usize,
    pub k: Option<usize>,
    #[serde(with = "crate::rational::serde_q")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub rhs: Rational,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = (self.i + 1, self.j + 1);
        match self.axiom {
            Axiom::M1 if i == j => write!(f, "M1 at ({i},{i}): d = {} is not 0", self.lhs),
            Axiom::M1 => write!(f, "M1 at ({i},{j}): distinct points at distance 0"),
            Axiom::M2 => write!(f, "M2 at ({i},{j}): {} != {}", self.lhs, self.rhs),
            Axiom::M3 => write!(f, "M3 at ({i},{j}) via {}: {} > {}", self.k.unwrap() + 1, self.lhs, self.rhs),
            Axiom::U3 => write!(f, "U3 at ({i},{j}) via {}: {} > max = {}", self.k.unwrap() + 1, self.lhs, self.rhs),
        }
    }
}

/// Which axiom set a check targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Metric,
    Ultrametric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Metric => "metric",
            Mode::Ultrametric => "ultrametric",
        })
    }
}

/// First violation of M1, M2 and then M3 (or U3) on an arbitrary square
/// table, such as the entrywise image of a matrix under a function with
/// `f(0) != 0`. Pairs run over `i <= j` lexicographically; the
/// three-point axiom then runs over `i < j` and `k` not in `{i, j}`.
pub fn first_violation(d: &[Vec<Rational>], mode: Mode) -> Option<AxiomViolation> {
    let n = d.len();
    let zero = Rational::zero();
    let v = |axiom, i, j, k, lhs: &Rational, rhs: &Rational| AxiomViolation {
        axiom,
        i,
        j,
        k,
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    };
    for i in 0..n {
        for j in i..n {
            if (i == j) != d[i][j].is_zero() {
                return Some(v(Axiom::M1, i, j, None, &d[i][j], &zero));
            }
            if d[i][j] != d[j][i] {
                return Some(v(Axiom::M2, i, j, None, &d[i][j], &d[j][i]));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in (0..n).filter(|&k| k != i && k != j) {
                let rhs = match mode {
                    Mode::Metric => &d[i][k] + &d[k][j],
                    Mode::Ultrametric => std::cmp::max(&d[i][k], &d[k][j]).clone(),
                };
                if d[i][j] > rhs {
                    let axiom = if mode == Mode::Metric { Axiom::M3 } else { Axiom::U3 };
                    return Some(v(axiom, i, j, Some(k), &d[i][j], &rhs));
                }
            }
        }
    }
    None
}

fn validate(d: &DistanceMatrix, mode: Mode) -> Verdict {
    match first_violation(&d.d, mode) {
        None => Verdict::proven(match mode {
            Mode::Metric => "M1 and M3 over all triples",
            Mode::Ultrametric => "M1 and U3 over all triples",
        }),
        Some(v) => Verdict::refuted("first violated axiom", Evidence::Axiom(v)),
    }
}

pub fn validate_metric(d: &DistanceMatrix) -> Verdict {
    validate(d, Mode::Metric)
}

pub fn validate_ultrametric(d: &DistanceMatrix) -> Verdict {
    validate(d, Mode::Ultrametric)
}

// ---------------------------------------------------------------------------
// transforms and triplets

/// `f` applied to every entry, diagonal included, without any checks.
pub fn image_entries(d: &DistanceMatrix, f: &PiecewiseFunction) -> Vec<Vec<Rational>> {
    d.d.iter().map(|r| r.iter().map(|x| f.eval(x)).collect()).collect()
}

/// The space `(X, f o d)`.
pub fn transform_space(d: &DistanceMatrix, f: &PiecewiseFunction) -> Result<DistanceMatrix, FinspaceError> {
    let f0 = f.eval(&Rational::zero());
    if !f0.is_zero() {
        return Err(FinspaceError::NonAmenableDiagonal { f0 });
    }
    Ok(DistanceMatrix::new(image_entries(d, f)).expect("image of a distance matrix under a nonnegative f with f(0) = 0"))
}

/// Which of the three isoceles patterns a triplet follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    #[serde(rename = "a<=b=c")]
    AShortest,
    #[serde(rename = "b<=c=a")]
    BShortest,
    #[serde(rename = "c<=a=b")]
    CShortest,
    #[serde(rename = "none")]
    Irregular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triplet {
    #[serde(with = "crate::rational::serde_q")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub c: Rational,
    /// Triangle triplet: each side at most the sum of the other two.
    pub in_delta: bool,
    /// Ultra triangle triplet: each side at most the larger of the others.
    pub in_delta_inf: bool,
    pub shape: Shape,
}

impl Triplet {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        let in_delta = a <= &b + &c && b <= &c + &a && c <= &a + &b;
        let in_delta_inf = a <= *std::cmp::max(&b, &c) && b <= *std::cmp::max(&c, &a) && c <= *std::cmp::max(&a, &b);
        let shape = if a <= b && b == c {
            Shape::AShortest
        } else if b <= c && c == a {
            Shape::BShortest
        } else if c <= a && a == b {
            Shape::CShortest
        } else {
            Shape::Irregular
        };
        Triplet {
            a,
            b,
            c,
            in_delta,
            in_delta_inf,
            shape,
        }
    }
}

/// Three points with `d(1,3) = a`, `d(1,2) = b`, `d(2,3) = c`.
pub fn realize_triplet(t: &Triplet, mode: Mode) -> Result<DistanceMatrix, FinspaceError> {
    let refuse = |reason| FinspaceError::NotRealizable {
        a: t.a.clone(),
        b: t.b.clone(),
        c: t.c.clone(),
        mode,
        reason,
    };
    let ok = match mode {
        Mode::Metric => t.in_delta,
        Mode::Ultrametric => t.in_delta_inf,
    };
    if !ok {
        return Err(refuse(match mode {
            Mode::Metric => "triangle inequality fails",
            Mode::Ultrametric => "ultrametric inequality fails",
        }));
    }
    if !(t.a.is_positive() && t.b.is_positive() && t.c.is_positive()) {
        return Err(refuse("distinct points need positive distances"));
    }
    let z = Rational::zero();
    DistanceMatrix::new(vec![
        vec![z.clone(), t.b.clone(), t.a.clone()],
        vec![t.b.clone(), z.clone(), t.c.clone()],
        vec![t.a.clone(), t.c.clone(), z],
    ])
    .map_err(|_| refuse("negative distance"))
}

/// Two points at distance `x`.
pub fn two_point_space(x: Rational) -> Result<DistanceMatrix, MatrixError> {
    DistanceMatrix::from_upper(2, &[x])
}

// ---------------------------------------------------------------------------
// generators

fn check_size(n: usize) {
    assert!((1..=MAX_POINTS).contains(&n), "space size must be in 1..={MAX_POINTS}, got {n}");
}

/// Factor in `[1/1000, 999/1000]`.
fn shrink(rng: &mut Lcg) -> Rational {
    Rational::new((1 + rng.below(999)).into(), 1000.into())
}

/// Random ultrametric on `n` points: leaves of a random binary tree whose
/// node heights strictly decrease towards the leaves; the distance of two
/// points is the height of their lowest common ancestor.
pub fn random_ultrametric(n: usize, seed: u64) -> DistanceMatrix {
    check_size(n);
    let mut rng = Lcg::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        order.swap(i, j);
    }
    let mut d = vec![vec![Rational::zero(); n]; n];
    let root = rng.rational();
    let mut stack = vec![(order, root)];
    while let Some((leaves, height)) = stack.pop() {
        if leaves.len() < 2 {
            continue;
        }
        let cut = 1 + rng.below(leaves.len() as u64 - 1) as usize;
        let (left, right) = leaves.split_at(cut);
        for &x in left {
            for &y in right {
                d[x][y] = height.clone();
                d[y][x] = height.clone();
            }
        }
        let hl = &height * shrink(&mut rng);
        let hr = &height * shrink(&mut rng);
        stack.push((left.to_vec(), hl));
        stack.push((right.to_vec(), hr));
    }
    DistanceMatrix::new(d).expect("tree distances are a valid container")
}

/// All-pairs shortest paths over a table of positive distances.
pub(crate) fn shortest_path_closure(d: &mut [Vec<Rational>]) {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
}

/// Random metric on `n` points: random positive distances repaired by the
/// shortest-path closure.
pub fn random_metric(n: usize, seed: u64) -> DistanceMatrix {
    check_size(n);
    let mut rng = Lcg::new(seed);
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            // the pinned draw never yields 0, so nothing needs regenerating
            let v = rng.rational();
            d[i][j] = v.clone();
            d[j][i] = v;
        }
    }
    shortest_path_closure(&mut d);
    DistanceMatrix::new(d).expect("closure keeps the container valid")
}

// ---------------------------------------------------------------------------
// derived quantities

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainBound {
    #[serde(with = "crate::rational::serde_q")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub rhs: Rational,
    pub holds: bool,
}

/// `d(first, last)` against the largest step along `path`.
pub fn chain_bound_check(d: &DistanceMatrix, path: &[usize]) -> Result<ChainBound, FinspaceError> {
    if path.len() < 2 {
        return Err(FinspaceError::Precondition("a path needs at least two points".into()));
    }
    if let Some(&bad) = path.iter().find(|&&p| p >= d.n()) {
        return Err(FinspaceError::Precondition(format!("point {bad} out of range")));
    }
    if let Some(v) = first_violation(&d.d, Mode::Ultrametric) {
        return Err(FinspaceError::Precondition(format!("not an ultrametric: {v}")));
    }
    let lhs = d.get(path[0], path[path.len() - 1]).clone();
    let rhs = path.windows(2).map(|w| d.get(w[0], w[1])).max().unwrap().clone();
    Ok(ChainBound {
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscretenessProfile {
    /// Smallest distance between distinct points; every open ball of at
    /// most this radius is a singleton. `+inf` for one point.
    pub min_positive: ExtRational,
    /// Distinct off-diagonal distances, ascending.
    #[serde(with = "crate::rational::serde_q::vec")]
    pub value_set: Vec<Rational>,
    /// All distinct points are at one common distance.
    pub two_valued: bool,
}

pub fn discreteness_profile(d: &DistanceMatrix) -> DiscretenessProfile {
    let mut values: Vec<Rational> = d.upper().cloned().collect();
    values.sort();
    values.dedup();
    let min_positive = values
        .iter()
        .find(|v| v.is_positive())
        .cloned()
        .map(ExtRational::Finite)
        .unwrap_or(ExtRational::PosInf);
    DiscretenessProfile {
        min_positive,
        two_valued: values.len() == 1,
        value_set: values,
    }
}

/// Largest ultrametric below a metric: the distance of `x` and `y` becomes
/// the least possible largest step over paths from `x` to `y`.
pub fn subdominant_ultrametric(d: &DistanceMatrix) -> Result<DistanceMatrix, FinspaceError> {
    if let Some(v) = first_violation(&d.d, Mode::Metric) {
        return Err(FinspaceError::Precondition(format!("not a metric: {v}")));
    }
    let mut u = d.d.clone();
    let n = u.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = std::cmp::max(&u[i][k], &u[k][j]).clone();
                if via < u[i][j] {
                    u[i][j] = via;
                }
            }
        }
    }
    Ok(DistanceMatrix::new(u).expect("minimax distances are a valid container"))
}

/// A random path of `len` points in an `n`-point space.
pub fn random_path(rng: &mut Lcg, n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.below(n as u64) as usize).collect()
}

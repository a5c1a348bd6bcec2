//! Counterexample witnesses realized as concrete finite spaces, and a
//! brute-force cross-check of classification verdicts.
//!
//! Every witness carries a 2- or 3-point space and the first axiom its
//! image under `f` breaks, so a refutation can be checked with the
//! validators alone.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine;
use crate::candidates::{candidate_points, random_triangle, triples_by_round};
use crate::classifier::ClassReport;
use crate::finspace::{
    discreteness_profile, first_violation, image_entries, random_metric, random_ultrametric, realize_triplet,
    two_point_space, AxiomViolation, DistanceMatrix, Mode, Triplet,
};
use crate::properties::{is_amenable, is_constant_on_positive, is_increasing, satisfies_doubling};
use crate::pwfun::PiecewiseFunction;
use crate::rational::{int, Rational};
use crate::rng::Lcg;
use crate::verdict::{Evidence, PairWitness, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    /// `a < b` with `f(a) > f(b)`, on the ultrametric `(a, b, b)`.
    MonotonePair,
    /// `f` vanishes at a positive distance, or `f(0) != 0`.
    ZeroValue,
    /// `a <= b` with `f(a) > 2 f(b)`, on the ultrametric `(a, b, b)`.
    DoublingPair,
    /// `p <= 2q` with `f(p) != f(q)`, on the metric `(p, q, q)`.
    NonConstantPair,
    /// `(a, b, c)` in the triangle cone with `f(a) > f(b) + f(c)`.
    TripletM,
    /// A metric triplet whose image breaks the ultrametric inequality.
    TripletMU,
}

impl WitnessKind {
    /// The axiom set the image is checked against.
    pub fn target(self) -> Mode {
        match self {
            WitnessKind::MonotonePair | WitnessKind::NonConstantPair | WitnessKind::TripletMU => Mode::Ultrametric,
            WitnessKind::ZeroValue | WitnessKind::DoublingPair | WitnessKind::TripletM => Mode::Metric,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Pair(PairWitness),
    Triplet(Triplet),
    Point {
        #[serde(with = "crate::rational::serde_q")]
        x: Rational,
        #[serde(with = "crate::rational::serde_q")]
        fx: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub payload: Payload,
    pub realized: DistanceMatrix,
    pub failed_axiom: AxiomViolation,
}

impl Witness {
    /// Build from a space, computing the first violation of its image.
    /// `None` if the image breaks nothing.
    fn realize(f: &PiecewiseFunction, kind: WitnessKind, payload: Payload, realized: DistanceMatrix) -> Option<Self> {
        let failed_axiom = first_violation(&image_entries(&realized, f), kind.target())?;
        Some(Witness {
            kind,
            payload,
            realized,
            failed_axiom,
        })
    }

    /// Re-evaluate the payload and the image of the realized space.
    pub fn verify(&self, f: &PiecewiseFunction) -> bool {
        let payload_ok = match &self.payload {
            Payload::Pair(p) => f.eval(&p.a) == p.fa && f.eval(&p.b) == p.fb,
            Payload::Point { x, fx } => f.eval(x) == *fx,
            Payload::Triplet(t) => *t == Triplet::new(t.a.clone(), t.b.clone(), t.c.clone()),
        };
        payload_ok && first_violation(&image_entries(&self.realized, f), self.kind.target()).as_ref() == Some(&self.failed_axiom)
    }

    pub fn triplet(&self) -> Option<&Triplet> {
        match &self.payload {
            Payload::Triplet(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Pair(p) => write!(f, "{:?} a = {}, b = {}: f(a) = {}, f(b) = {}", self.kind, p.a, p.b, p.fa, p.fb)?,
            Payload::Triplet(t) => write!(f, "{:?} ({}, {}, {})", self.kind, t.a, t.b, t.c)?,
            Payload::Point { x, fx } => write!(f, "{:?} f({x}) = {fx}", self.kind)?,
        }
        write!(f, "; image breaks {}", self.failed_axiom)
    }
}

/// Result of a witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Box<Witness>),
    /// No witness exists: the class membership is proven.
    Member,
    /// Nothing found by an incomplete search.
    Inconclusive,
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

fn found(w: Witness) -> SearchOutcome {
    SearchOutcome::Found(Box::new(w))
}

// ---------------------------------------------------------------------------
// builders

/// A `ZeroValue` witness from a point refutation of amenability. With
/// `f(x) = 0` at `x > 0` the two points at distance `x` collapse; with
/// `f(0) != 0` the image has a nonzero diagonal.
pub(crate) fn zero_witness(f: &PiecewiseFunction, amenable: &Verdict) -> Option<Witness> {
    let Some(Evidence::Point { x, fx }) = &amenable.witness else {
        return None;
    };
    let dist = if x.is_zero() { int(1) } else { x.clone() };
    let space = two_point_space(dist).ok()?;
    Witness::realize(f, WitnessKind::ZeroValue, Payload::Point { x: x.clone(), fx: fx.clone() }, space)
}

fn triplet_witness(f: &PiecewiseFunction, kind: WitnessKind, payload: Option<PairWitness>, t: Triplet, mode: Mode) -> Option<Witness> {
    let space = realize_triplet(&t, mode).ok()?;
    let payload = match payload {
        Some(p) => Payload::Pair(p),
        None => Payload::Triplet(t),
    };
    Witness::realize(f, kind, payload, space)
}

/// `(a, b, b)` on the ultrametric side for a monotonicity pair `a < b`.
pub(crate) fn monotone_witness(f: &PiecewiseFunction, p: &PairWitness) -> Option<Witness> {
    let t = Triplet::new(p.a.clone(), p.b.clone(), p.b.clone());
    triplet_witness(f, WitnessKind::MonotonePair, Some(p.clone()), t, Mode::Ultrametric)
}

pub(crate) fn doubling_witness(f: &PiecewiseFunction, p: &PairWitness) -> Option<Witness> {
    let t = Triplet::new(p.a.clone(), p.b.clone(), p.b.clone());
    triplet_witness(f, WitnessKind::DoublingPair, Some(p.clone()), t, Mode::Ultrametric)
}

/// `(p, q, q)` with `p` the larger-valued point.
pub(crate) fn nonconstant_witness(f: &PiecewiseFunction, p: &PairWitness) -> Option<Witness> {
    let t = Triplet::new(p.a.clone(), p.b.clone(), p.b.clone());
    triplet_witness(f, WitnessKind::NonConstantPair, Some(p.clone()), t, Mode::Metric)
}

pub(crate) fn triangle_witness(f: &PiecewiseFunction, (a, b, c): (Rational, Rational, Rational)) -> Option<Witness> {
    triplet_witness(f, WitnessKind::TripletM, None, Triplet::new(a, b, c), Mode::Metric)
}

// ---------------------------------------------------------------------------
// searches

/// Ultrametric-preservation fails iff `f` is not amenable or not increasing.
pub fn find_u_violation(f: &PiecewiseFunction) -> SearchOutcome {
    let am = is_amenable(f);
    if let Some(w) = zero_witness(f, &am) {
        return found(w);
    }
    let inc = is_increasing(f);
    if let Some(w) = inc.pair().and_then(|p| monotone_witness(f, p)) {
        return found(w);
    }
    if am.is_proven() && inc.is_proven() {
        SearchOutcome::Member
    } else {
        SearchOutcome::Inconclusive
    }
}

/// `f(a) > f(b) + f(c)` over candidate triples in the triangle cone.
fn grid_triangle_violation(f: &PiecewiseFunction) -> Option<(Rational, Rational, Rational)> {
    let pts = candidate_points(f);
    let vals: Vec<Rational> = pts.iter().map(|x| f.eval(x)).collect();
    let hit = triples_by_round(&pts).find(|&(i, j, l)| {
        let (a, b, c) = (&pts[i], &pts[j], &pts[l]);
        vals[i] > &vals[j] + &vals[l] && a <= &(b + c) && b <= &(a + c) && c <= &(a + b)
    });
    hit.map(|(i, j, l)| (pts[i].clone(), pts[j].clone(), pts[l].clone()))
}

fn random_triangle_violation(f: &PiecewiseFunction, budget: usize, seed: u64) -> Option<(Rational, Rational, Rational)> {
    let mut rng = Lcg::new(seed);
    (0..budget)
        .map(|_| random_triangle(&mut rng))
        .find(|(a, b, c)| f.eval(a) > f.eval(b) + f.eval(c))
}

/// Candidate triples (and, for piecewise-affine `f`, the exact cell
/// decision) and then up to `budget` seeded random triangles.
pub fn find_m_violation(f: &PiecewiseFunction, budget: usize, seed: u64) -> SearchOutcome {
    let am = is_amenable(f);
    if let Some(w) = zero_witness(f, &am) {
        return found(w);
    }
    if let Some(w) = grid_triangle_violation(f).and_then(|t| triangle_witness(f, t)) {
        return found(w);
    }
    if f.is_piecewise_affine() {
        return match affine::triangle_violation(f) {
            Some(t) => found(triangle_witness(f, t).expect("exact violation realizes")),
            None => SearchOutcome::Member,
        };
    }
    match random_triangle_violation(f, budget, seed).and_then(|t| triangle_witness(f, t)) {
        Some(w) => found(w),
        None => SearchOutcome::Inconclusive,
    }
}

pub fn find_um_violation(f: &PiecewiseFunction) -> SearchOutcome {
    let am = is_amenable(f);
    if let Some(w) = zero_witness(f, &am) {
        return found(w);
    }
    let dbl = satisfies_doubling(f);
    if let Some(w) = dbl.pair().and_then(|p| doubling_witness(f, p)) {
        return found(w);
    }
    if am.is_proven() && dbl.is_proven() {
        SearchOutcome::Member
    } else {
        SearchOutcome::Inconclusive
    }
}

/// From `u < v` with `f(u) != f(v)`, walk `u = r_0 < r_1 < ...` with
/// `r_{i+1} = min(2 r_i, v)` until two consecutive values differ, then
/// shrink the step to the last breakpoint inside it where the value
/// changes. Returns `(p, q)` with `f(p) > f(q)`, `max <= 2 min`, and the
/// number of doubling rounds.
pub(crate) fn chain_pair(f: &PiecewiseFunction, u: &Rational, v: &Rational) -> (Rational, Rational, usize) {
    let two = int(2);
    let breakpoints = f.breakpoints();
    let mut r = u.clone();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let hi = std::cmp::min(&r * &two, v.clone());
        let fhi = f.eval(&hi);
        if fhi != f.eval(&r) {
            let lo = breakpoints
                .iter()
                .rev()
                .find(|b| **b > r && **b < hi && f.eval(b) != fhi)
                .cloned()
                .unwrap_or(r);
            let (x, y) = if f.eval(&lo) > fhi { (lo, hi) } else { (hi, lo) };
            return (x, y, rounds);
        }
        r = hi;
    }
}

/// Metric-to-ultrametric preservation fails iff `f` is not amenable or
/// not constant on `(0, inf)`.
pub fn find_mu_violation(f: &PiecewiseFunction) -> SearchOutcome {
    let am = is_amenable(f);
    if let Some(w) = zero_witness(f, &am) {
        return found(w);
    }
    let cst = is_constant_on_positive(f);
    if let Some(p) = cst.pair() {
        let (x, y, _) = chain_pair(f, &p.a, &p.b);
        let pw = PairWitness {
            fa: f.eval(&x),
            fb: f.eval(&y),
            a: x,
            b: y,
        };
        if let Some(w) = nonconstant_witness(f, &pw) {
            return found(w);
        }
    }
    if am.is_proven() && cst.is_proven() {
        SearchOutcome::Member
    } else {
        SearchOutcome::Inconclusive
    }
}

// ---------------------------------------------------------------------------
// cross-validation

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    /// Class whose Proven verdict the space contradicts.
    pub class: String,
    pub space: DistanceMatrix,
    pub violation: Option<AxiomViolation>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    /// Spaces generated of each kind.
    pub checked: usize,
    /// Images of random ultrametrics that are ultrametrics, resp. metrics.
    pub ultra_to_ultra: usize,
    pub ultra_to_metric: usize,
    /// Images of random metrics that are metrics, resp. ultrametrics.
    pub metric_to_metric: usize,
    pub metric_to_ultra: usize,
    /// Images of random metrics that take a single nonzero value.
    pub two_valued: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Space sizes cycle through `2..=12`.
pub fn space_size(i: usize) -> usize {
    2 + i % 11
}

/// Transform `spaces` random ultrametric and metric spaces and record
/// every image that contradicts a Proven verdict of `report`.
pub fn cross_validate(f: &PiecewiseFunction, report: &ClassReport, spaces: usize, seed: u64) -> CrossValidation {
    let mut out = CrossValidation::default();
    let disagree = |out: &mut CrossValidation, class: &str, space: &DistanceMatrix, violation, detail: &str| {
        out.disagreements.push(Disagreement {
            class: class.to_string(),
            space: space.clone(),
            violation,
            detail: detail.to_string(),
        })
    };
    for i in 0..spaces {
        let n = space_size(i);
        let s = seed.wrapping_add(i as u64);
        out.checked += 1;

        let u = random_ultrametric(n, s);
        let img = image_entries(&u, f);
        let as_ultra = first_violation(&img, Mode::Ultrametric);
        let as_metric = first_violation(&img, Mode::Metric);
        out.ultra_to_ultra += as_ultra.is_none() as usize;
        out.ultra_to_metric += as_metric.is_none() as usize;
        if report.in_u.is_proven() && as_ultra.is_some() {
            disagree(&mut out, "U", &u, as_ultra.clone(), "image of an ultrametric is not an ultrametric");
        }
        if report.in_um.is_proven() && as_metric.is_some() {
            disagree(&mut out, "UM", &u, as_metric.clone(), "image of an ultrametric is not a metric");
        }

        let d = random_metric(n, s ^ 0x9e37_79b9_7f4a_7c15);
        let img = image_entries(&d, f);
        let as_ultra = first_violation(&img, Mode::Ultrametric);
        let as_metric = first_violation(&img, Mode::Metric);
        out.metric_to_ultra += as_ultra.is_none() as usize;
        out.metric_to_metric += as_metric.is_none() as usize;
        let single = as_metric.is_none() && {
            let space = DistanceMatrix::new(img).expect("valid metric image");
            discreteness_profile(&space).two_valued
        };
        out.two_valued += single as usize;
        if report.in_m.is_proven() && as_metric.is_some() {
            disagree(&mut out, "M", &d, as_metric.clone(), "image of a metric is not a metric");
        }
        if report.in_mu.is_proven() {
            if as_ultra.is_some() {
                disagree(&mut out, "MU", &d, as_ultra.clone(), "image of a metric is not an ultrametric");
            } else if !single {
                disagree(&mut out, "MU", &d, None, "image of a metric takes more than one nonzero value");
            }
        }
    }
    out
}

//! Exact decisions about metric- and ultrametric-preserving functions.
//!
//! A function `f: [0, inf) -> [0, inf)` is given piecewise by rational
//! functions ([`pwfun`]). The [`classifier`] decides whether `f o d` stays
//! a metric (or an ultrametric) for every metric (or ultrametric) `d`,
//! backed by the property deciders in [`properties`]. Refutations come
//! with witnesses realized as small finite spaces ([`search`],
//! [`finspace`]).

mod affine;
mod candidates;
pub mod classifier;
pub mod corpus;
pub mod finspace;
mod polytope;
pub mod poly;
pub mod properties;
pub mod pwfun;
pub mod rational;
pub mod rng;
pub mod search;
pub mod sturm;
pub mod verdict;

pub use classifier::{classify, validate_inclusions, ClassReport, ContinuityProfile};
pub use finspace::{AxiomViolation, DistanceMatrix, Mode, Triplet};
pub use pwfun::{parse_function, Interval, ParseError, PiecewiseFunction};
pub use rational::{ExtRational, Rational};
pub use search::{SearchOutcome, Witness, WitnessKind};
pub use verdict::{Evidence, PairWitness, Status, Verdict};

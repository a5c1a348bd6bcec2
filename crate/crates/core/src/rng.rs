//! Pinned 64-bit linear congruential generator.
//!
//! Fixtures generated from a seed must be reproducible across
//! implementations, so the constants and the rational draw are fixed:
//! `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
//! and a rational is `(1 + s1 mod 1000) / (1 + s2 mod 100)` for two
//! successive states.

use crate::rational::{int, Rational};
use num_bigint::BigInt;

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    /// Uniform-ish integer in `0..bound`. `bound` must be positive.
    /// Uses the high half of the state; the low bits of an LCG have short
    /// periods.
    pub fn below(&mut self, bound: u64) -> u64 {
        (self.next_u64() >> 32) % bound
    }

    /// The pinned rational draw, in `[1/100, 1000]`.
    pub fn rational(&mut self) -> Rational {
        let num = 1 + self.next_u64() % 1000;
        let den = 1 + self.next_u64() % 100;
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A rational in `[0, 1]` with denominator 1000.
    pub fn unit(&mut self) -> Rational {
        Rational::new(BigInt::from(self.next_u64() % 1001), BigInt::from(1000))
    }

    /// Rational in `(0, scale]` with a small denominator.
    pub fn scaled(&mut self, scale: i64) -> Rational {
        let num = 1 + self.next_u64() % 1000;
        Rational::new(BigInt::from(num), BigInt::from(1000)) * int(scale)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn first_states_match_the_recurrence() {
        let mut g = Lcg::new(0);
        assert_eq!(g.next_u64(), INCREMENT);
        let expected = INCREMENT.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        assert_eq!(g.next_u64(), expected);
    }

    #[test]
    fn rational_draw_uses_successive_states() {
        let mut a = Lcg::new(42);
        let s1 = a.next_u64();
        let s2 = a.next_u64();
        let mut b = Lcg::new(42);
        let q = b.rational();
        assert_eq!(
            q,
            frac((1 + s1 % 1000) as i64, (1 + s2 % 100) as i64)
        );
    }

    #[test]
    fn deterministic_given_seed() {
        let xs: Vec<_> = (0..5).map({
            let mut g = Lcg::new(9);
            move |_| g.rational()
        }).collect();
        let ys: Vec<_> = (0..5).map({
            let mut g = Lcg::new(9);
            move |_| g.rational()
        }).collect();
        assert_eq!(xs, ys);
    }
}

//! Balls-into-bins statistics for `k` frequencies hashed into `p` residues.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use alloc::vec;

use crate::{math, Error, Result};

/// Expected numbers of singly occupied, multiply occupied and empty bins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupancyExpectation {
    pub k: u64,
    pub p: u64,
    pub ex_single: f64,
    pub ex_multi: f64,
    pub ex_empty: f64,
}

impl OccupancyExpectation {
    /// Expected fraction of the `k` balls that sit alone.
    pub fn isolated_fraction(&self) -> f64 {
        self.ex_single / self.k as f64
    }

    /// Expected multiply occupied bins per ball.
    pub fn multi_bin_fraction(&self) -> f64 {
        self.ex_multi / self.k as f64
    }
}

/// Closed-form expectations after `k` uniform throws into `p` bins.
///
/// Panics if `k` or `p` is zero.
pub fn expected_occupancy(k: u64, p: u64) -> OccupancyExpectation {
    assert!(k >= 1 && p >= 1, "k and p must be positive");
    let q = 1.0 - 1.0 / p as f64;
    let pf = p as f64;
    let kf = k as f64;
    let ex_single = kf * math::powi(q, (k - 1) as i32);
    let ex_empty = pf * math::powi(q, k as i32);
    OccupancyExpectation {
        k,
        p,
        ex_single,
        ex_multi: pf - ex_empty - ex_single,
        ex_empty,
    }
}

/// The same expectations by iterating the one-ball transition
/// `(X, Y) ← A (X, Y) + (1, 0)` with `A = [[1-2/p, -1/p], [1/p, 1]]`,
/// starting from one ball in one bin.
pub fn occupancy_recurrence(k: u64, p: u64) -> OccupancyExpectation {
    assert!(k >= 1 && p >= 1, "k and p must be positive");
    let inv = 1.0 / p as f64;
    let (mut x, mut y) = (1.0f64, 0.0f64);
    for _ in 1..k {
        (x, y) = ((1.0 - 2.0 * inv) * x - inv * y + 1.0, inv * x + y);
    }
    OccupancyExpectation {
        k,
        p,
        ex_single: x,
        ex_multi: y,
        ex_empty: p as f64 - x - y,
    }
}

/// `e^{-1/c}`: the approximate isolated fraction when `p = ck`.
pub fn approx_isolated_fraction(c: f64) -> f64 {
    math::exp(-1.0 / c)
}

/// Solves `approx_isolated_fraction(c) = target` by Newton's method from
/// `c = 1`, falling back to bisection when a step leaves the bracket.
pub fn solve_c_for_isolation(target: f64) -> Result<f64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidFraction(target));
    }
    const MAX_ITER: usize = 200;
    let f = |c: f64| approx_isolated_fraction(c) - target;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while f(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    let mut c = 1.0;
    for _ in 0..MAX_ITER {
        let fc = f(c);
        if fc < 0.0 {
            lo = lo.max(c);
        } else {
            hi = hi.min(c);
        }
        let slope = approx_isolated_fraction(c) / (c * c);
        let mut next = c - fc / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if math::abs(next - c) <= 1e-10 * next.max(1.0) {
            return Ok(next);
        }
        c = next;
    }
    Err(Error::NoConvergence(MAX_ITER))
}

/// Monte-Carlo occupancy means with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupancyEstimate {
    pub trials: usize,
    pub single: f64,
    pub multi: f64,
    pub empty: f64,
    pub single_se: f64,
    pub multi_se: f64,
    pub empty_se: f64,
}

/// Throws `k` balls into `p` bins `trials` times.
///
/// Panics if any argument is zero.
pub fn simulate_occupancy(k: u64, p: u64, trials: usize, seed: u64) -> OccupancyEstimate {
    assert!(
        k >= 1 && p >= 1 && trials >= 1,
        "arguments must be positive"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u32; p as usize];
    let mut sum = [0.0f64; 3];
    let mut sum_sq = [0.0f64; 3];
    for _ in 0..trials {
        counts.iter_mut().for_each(|c| *c = 0);
        for _ in 0..k {
            counts[rng.random_range(0..p as usize)] += 1;
        }
        let mut tally = [0.0f64; 3];
        for &c in &counts {
            match c {
                0 => tally[2] += 1.0,
                1 => tally[0] += 1.0,
                _ => tally[1] += 1.0,
            }
        }
        for i in 0..3 {
            sum[i] += tally[i];
            sum_sq[i] += tally[i] * tally[i];
        }
    }
    let n = trials as f64;
    let mean = sum.map(|s| s / n);
    let se = |i: usize| {
        if trials < 2 {
            return 0.0;
        }
        let var = (sum_sq[i] - n * mean[i] * mean[i]) / (n - 1.0);
        math::sqrt(var.max(0.0) / n)
    };
    OccupancyEstimate {
        trials,
        single: mean[0],
        multi: mean[1],
        empty: mean[2],
        single_se: se(0),
        multi_se: se(1),
        empty_se: se(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn one_ball() {
        for p in [1, 2, 7, 331] {
            let e = expected_occupancy(1, p);
            assert_eq!(
                (e.ex_single, e.ex_multi, e.ex_empty),
                (1.0, 0.0, p as f64 - 1.0)
            );
            let s = simulate_occupancy(1, p, 50, p);
            assert_eq!((s.single, s.multi, s.empty), (1.0, 0.0, p as f64 - 1.0));
        }
    }

    #[test]
    fn two_balls_two_bins_by_enumeration() {
        // placements (0,0) (0,1) (1,0) (1,1): singles 0,2,2,0 and multis 1,0,0,1
        let (mut x, mut y) = (0.0, 0.0);
        for a in 0..2 {
            for b in 0..2 {
                if a == b {
                    y += 1.0;
                } else {
                    x += 2.0;
                }
            }
        }
        let e = expected_occupancy(2, 2);
        assert_abs_diff_eq!(e.ex_single, x / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.ex_multi, y / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.ex_empty, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn large_k_matches_exponential_approximation() {
        let e = expected_occupancy(1000, 5000);
        assert!((e.isolated_fraction() - approx_isolated_fraction(5.0)).abs() < 2e-4);
    }

    #[test]
    fn isolated_fraction_values() {
        assert_abs_diff_eq!(
            approx_isolated_fraction(1.0),
            (-1.0f64).exp(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(approx_isolated_fraction(5.0), 0.818_730_753, epsilon = 1e-9);
        assert!(approx_isolated_fraction(1e12) > 1.0 - 1e-11);
    }

    #[test]
    fn newton_solve_matches_closed_form() {
        for target in [1e-6, 0.01, 0.25, (-1.0f64).exp(), 0.5, 0.9, 0.999_999] {
            let c = solve_c_for_isolation(target).unwrap();
            let expect = -1.0 / target.ln();
            assert!(
                (c - expect).abs() <= 1e-8 * expect.max(1.0),
                "{target}: {c} vs {expect}"
            );
        }
        assert!((solve_c_for_isolation(0.5).unwrap() - core::f64::consts::LOG2_E).abs() < 1e-10);
        for bad in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(solve_c_for_isolation(bad).is_err());
        }
    }

    #[test]
    fn simulation_tracks_closed_form() {
        let e = expected_occupancy(64, 320);
        let s = simulate_occupancy(64, 320, 20_000, 7);
        assert!((s.single - e.ex_single).abs() < 4.0 * s.single_se);
        assert!((s.multi - e.ex_multi).abs() < 4.0 * s.multi_se);
        assert!((s.empty - e.ex_empty).abs() < 4.0 * s.empty_se);
        assert_eq!(s, simulate_occupancy(64, 320, 20_000, 7));
    }

    proptest! {
        #[test]
        fn conservation_and_recurrence(k in 1u64..2000, p in 1u64..5000) {
            let e = expected_occupancy(k, p);
            let total = e.ex_single + e.ex_multi + e.ex_empty;
            prop_assert!((total - p as f64).abs() <= 1e-9 * p as f64);
            for v in [e.ex_single, e.ex_multi, e.ex_empty] {
                prop_assert!(v >= -1e-9 * p as f64 && v <= p as f64 * (1.0 + 1e-12));
            }
            let r = occupancy_recurrence(k, p);
            prop_assert!((r.ex_single - e.ex_single).abs() <= 1e-10 * e.ex_single.max(1.0));
            prop_assert!((r.ex_multi - e.ex_multi).abs() <= 1e-10 * e.ex_multi.max(1.0));
        }

        #[test]
        fn solve_is_monotone(a in 0.01f64..0.99, b in 0.01f64..0.99) {
            prop_assume!(a < b);
            prop_assert!(solve_c_for_isolation(a).unwrap() < solve_c_for_isolation(b).unwrap());
        }
    }
}

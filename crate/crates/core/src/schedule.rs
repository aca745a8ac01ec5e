//! Sample-length schedules.
//!
//! The deterministic schedule issues the smallest prime `>= ⌈c1·k*⌉` not yet
//! used in the run, so every prefix is pairwise coprime; with a fixed `k*`
//! that is the sequence of consecutive primes above `c1·k`. The Las Vegas
//! schedule draws uniform integers from `[⌈c1·k*⌉, ⌊c2·k*⌋]` with no
//! primality requirement.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{math, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Deterministic,
    LasVegas,
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m < 4 {
        return true;
    }
    if m.is_multiple_of(2) || m.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= m {
        if m.is_multiple_of(d) || m.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime `>= m`.
pub fn next_prime_at_least(m: u64) -> u64 {
    let mut c = m.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

fn check_oversampling(c1: f64, c2: f64) -> Result<()> {
    if !(c1 > 1.0 && c2 > c1 && c2.is_finite()) {
        return Err(Error::InvalidOversampling { c1, c2 });
    }
    Ok(())
}

/// Uniform integer in `[⌈c1·k*⌉, ⌊c2·k*⌋]`.
pub fn draw_las_vegas<R: Rng + ?Sized>(
    k_star: usize,
    c1: f64,
    c2: f64,
    rng: &mut R,
) -> Result<u64> {
    check_oversampling(c1, c2)?;
    let lo = math::ceil(c1 * k_star as f64);
    let hi = math::floor(c2 * k_star as f64);
    if k_star == 0 || lo > hi {
        return Err(Error::EmptyInterval {
            lo: c1 * k_star as f64,
            hi: c2 * k_star as f64,
        });
    }
    Ok(rng.random_range(lo as u64..=hi as u64))
}

/// `⌊log_M N⌋`, computed by repeated multiplication so exact powers are not
/// lost to rounding.
fn floor_log(m: f64, n: u64) -> u64 {
    let n = n as f64;
    let mut acc = m;
    let mut q = 0;
    while acc <= n {
        acc *= m;
        q += 1;
    }
    q
}

/// Number of pairwise coprime lengths `>= M` that isolate every one of `k`
/// frequencies in a band of `N` at least once: `1 + (k-1)·⌊log_M N⌋`.
pub fn worst_case_count(k: usize, m: f64, bandwidth: u64) -> Result<u64> {
    if !(m > 1.0 && m.is_finite()) {
        return Err(Error::InvalidOversampling { c1: m, c2: m });
    }
    Ok(1 + (k.saturating_sub(1) as u64) * floor_log(m, bandwidth))
}

/// A stream of sample lengths for one recovery run.
#[derive(Debug, Clone)]
pub struct Schedule {
    variant: Variant,
    c1: f64,
    c2: f64,
    issued: Vec<u64>,
    rng: ChaCha8Rng,
}

impl Schedule {
    pub fn deterministic(c1: f64) -> Result<Self> {
        if !(c1 > 1.0 && c1.is_finite()) {
            return Err(Error::InvalidOversampling { c1, c2: f64::NAN });
        }
        Ok(Self {
            variant: Variant::Deterministic,
            c1,
            c2: f64::NAN,
            issued: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(0),
        })
    }

    pub fn las_vegas(c1: f64, c2: f64, seed: u64) -> Result<Self> {
        check_oversampling(c1, c2)?;
        Ok(Self {
            variant: Variant::LasVegas,
            c1,
            c2,
            issued: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Lengths issued so far, in order.
    pub fn issued(&self) -> &[u64] {
        &self.issued
    }

    /// Next sample length sized for `k_star` outstanding frequencies.
    pub fn next_length(&mut self, k_star: usize) -> Result<u64> {
        let p = match self.variant {
            Variant::Deterministic => {
                let mut p = next_prime_at_least(math::ceil(self.c1 * k_star.max(1) as f64) as u64);
                while self.issued.contains(&p) {
                    p = next_prime_at_least(p + 1);
                }
                p
            }
            Variant::LasVegas => draw_las_vegas(k_star, self.c1, self.c2, &mut self.rng)?,
        };
        self.issued.push(p);
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&m| is_prime(m)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(!is_prime(25));
        assert!(!is_prime(49));
    }

    #[test]
    fn next_prime() {
        assert_eq!(next_prime_at_least(1), 2);
        assert_eq!(next_prime_at_least(2), 2);
        assert_eq!(next_prime_at_least(300), 307);
        assert_eq!(next_prime_at_least(14), 17);
        assert_eq!(next_prime_at_least(320), 331);
    }

    #[test]
    fn las_vegas_range_and_reproducibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let p = draw_las_vegas(1, 5.0, 10.0, &mut rng).unwrap();
            assert!((5..=10).contains(&p));
        }
        let mut a = Schedule::las_vegas(5.0, 10.0, 9).unwrap();
        let mut b = Schedule::las_vegas(5.0, 10.0, 9).unwrap();
        for k in [30, 7, 2, 1] {
            assert_eq!(a.next_length(k).unwrap(), b.next_length(k).unwrap());
        }
    }

    #[test]
    fn las_vegas_rejects_bad_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(draw_las_vegas(4, 1.0, 10.0, &mut rng).is_err());
        assert!(draw_las_vegas(4, 5.0, 5.0, &mut rng).is_err());
        assert!(draw_las_vegas(0, 5.0, 10.0, &mut rng).is_err());
        // [⌈1.1·1⌉, ⌊1.9·1⌋] = [2, 1]
        assert!(matches!(
            draw_las_vegas(1, 1.1, 1.9, &mut rng),
            Err(Error::EmptyInterval { .. })
        ));
    }

    #[test]
    fn worst_case_formula() {
        assert_eq!(worst_case_count(1, 40.0, 1 << 22).unwrap(), 1);
        assert_eq!(worst_case_count(8, 40.0, 1 << 22).unwrap(), 29);
        assert_eq!(
            worst_case_count(2, (1u64 << 20) as f64, 1 << 20).unwrap(),
            2
        );
        // 2^22 = 4^11 exactly
        assert_eq!(worst_case_count(3, 4.0, 1 << 22).unwrap(), 23);
        assert!(worst_case_count(3, 1.0, 1 << 22).is_err());
    }

    #[test]
    fn deterministic_fixed_k_is_consecutive_primes() {
        let mut s = Schedule::deterministic(5.0).unwrap();
        let got: Vec<u64> = (0..6).map(|_| s.next_length(64).unwrap()).collect();
        assert_eq!(got, [331, 337, 347, 349, 353, 359]);
    }

    #[test]
    fn deterministic_shrinking_k_skips_issued() {
        let mut s = Schedule::deterministic(5.0).unwrap();
        let got: Vec<u64> = [3, 2, 1, 1, 2, 1]
            .iter()
            .map(|&k| s.next_length(k).unwrap())
            .collect();
        assert_eq!(got, [17, 11, 5, 7, 13, 19]);
    }
}

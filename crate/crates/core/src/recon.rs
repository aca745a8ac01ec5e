//! Frequency reconstruction from phase ratios, the aliasing test and
//! coefficient estimates.

use num_complex::Complex64;

use crate::{math, Error, Result};

/// The unshifted and shifted DFT values of one bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinReading {
    pub h: usize,
    pub unshifted: Complex64,
    pub shifted: Complex64,
    pub p: usize,
    pub epsilon: f64,
}

impl BinReading {
    fn ratio(&self) -> Result<Complex64> {
        if self.unshifted == Complex64::new(0.0, 0.0) {
            return Err(Error::UndefinedRatio);
        }
        Ok(self.shifted / self.unshifted)
    }
}

/// Acceptance tolerance `τ ∈ (0, 1)` on the magnitude ratio.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::InvalidTolerance(tau));
        }
        Ok(Self(tau))
    }

    /// `τ = p/N`.
    pub fn per_pass(p: usize, bandwidth: u64) -> Result<Self> {
        Self::new(p as f64 / bandwidth as f64)
    }

    pub fn tau(self) -> f64 {
        self.0
    }
}

/// `ω̃ = Arg(shifted / unshifted) / (2πε)` with `Arg ∈ [-π, π)`.
///
/// Exact for a bin holding a single frequency when `ε <= 1/N`.
pub fn reconstruct_frequency(reading: &BinReading) -> Result<f64> {
    let ratio = reading.ratio()?;
    Ok(math::arg(ratio) / (math::TAU * reading.epsilon))
}

/// `true` when `| |shifted|/|unshifted| - 1 | <= τ`, i.e. the bin looks like
/// a single occupant.
pub fn aliasing_test(reading: &BinReading, tol: Tolerance) -> Result<bool> {
    if reading.unshifted == Complex64::new(0.0, 0.0) {
        return Err(Error::UndefinedRatio);
    }
    let r = reading.shifted.norm() / reading.unshifted.norm();
    Ok(math::abs(r - 1.0) <= tol.0)
}

/// `unshifted / p`.
pub fn estimate_coefficient(reading: &BinReading) -> Complex64 {
    reading.unshifted / reading.p as f64
}

/// The in-band integer `≡ h (mod p)` nearest to `omega_tilde`; exact ties go
/// to the smaller candidate.
pub fn round_to_congruent(omega_tilde: f64, h: i64, p: u64, bandwidth: u64) -> Result<i64> {
    if p == 0 || h < 0 || h as u64 >= p {
        return Err(Error::BinOutOfRange { h, p });
    }
    if !omega_tilde.is_finite() {
        return Err(Error::InvalidShift(omega_tilde));
    }
    let pi = p as i64;
    let half = (bandwidth / 2) as i64;
    // smallest and largest in-band members of h + pZ
    let lo = -half + (h - (-half)).rem_euclid(pi);
    let hi = half - 1 - (half - 1 - h).rem_euclid(pi);
    if lo > hi {
        return Err(Error::NoCongruentFrequency { h, p, n: bandwidth });
    }
    let a = math::floor((omega_tilde - h as f64) / p as f64);
    let below = h as f64 + a * p as f64;
    let above = below + p as f64;
    let nearest = if omega_tilde - below <= above - omega_tilde {
        below
    } else {
        above
    };
    let nearest = nearest.clamp(lo as f64, hi as f64);
    Ok(nearest as i64)
}

/// Noiseless snapping: round `ω̃` to the nearest integer and keep it only if
/// it lies in band and is congruent to `h` mod `p`.
pub fn snap_to_integer(omega_tilde: f64, h: usize, p: usize, bandwidth: u64) -> Option<i64> {
    if !omega_tilde.is_finite() {
        return None;
    }
    let w = math::round(omega_tilde) as i64;
    let half = (bandwidth / 2) as i64;
    if w < -half || w >= half || w.rem_euclid(p as i64) != h as i64 {
        return None;
    }
    Some(w)
}

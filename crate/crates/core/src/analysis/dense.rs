//! Dense length-`N` references for the sparse spectrum.
//!
//! Frequency `ω ∈ [-N/2, N/2)` lives at index `ω mod N`, so nonnegative
//! frequencies keep their index and negative ones wrap to the upper half.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dft::{Direction, FftPlan};
use crate::signal::SparseSpectrum;

/// Largest bandwidth the dense helpers are meant for.
pub const DENSE_CAP: u64 = 1 << 22;

/// The full coefficient array of `spectrum`.
pub fn dense_oracle(spectrum: &SparseSpectrum) -> Vec<Complex64> {
    let n = spectrum.bandwidth() as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); n as usize];
    for m in spectrum.modes() {
        out[m.frequency.value().rem_euclid(n) as usize] = m.coefficient;
    }
    out
}

/// The signal at the `N` unit-spaced times `j/N`.
pub fn dense_samples(spectrum: &SparseSpectrum) -> Vec<Complex64> {
    let mut v = dense_oracle(spectrum);
    FftPlan::new(v.len()).process(&mut v, Direction::Inverse);
    v
}

/// Coefficients from `N` unit-spaced samples, indexed like [`dense_oracle`].
pub fn dense_transform(samples: &[Complex64]) -> Vec<Complex64> {
    let mut v = samples.to_vec();
    FftPlan::new(v.len()).process(&mut v, Direction::Forward);
    let scale = 1.0 / v.len().max(1) as f64;
    v.iter_mut().for_each(|z| *z *= scale);
    v
}

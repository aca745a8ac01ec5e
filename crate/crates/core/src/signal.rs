//! Sparse spectra, the sampled signal source and the random signal model.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{math, Error, Result};

/// An integer frequency in the band `[-N/2, N/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frequency(i64);

impl Frequency {
    /// Validates `value` against the band of `bandwidth`.
    pub fn new(value: i64, bandwidth: u64) -> Result<Self> {
        check_bandwidth(bandwidth)?;
        let half = (bandwidth / 2) as i64;
        if value < -half || value >= half {
            return Err(Error::FrequencyOutOfBand { freq: value, half });
        }
        Ok(Self(value))
    }

    pub const fn value(self) -> i64 {
        self.0
    }

    /// `ω mod p` in `[0, p)`.
    pub fn residue(self, p: usize) -> usize {
        self.0.rem_euclid(p as i64) as usize
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub frequency: Frequency,
    pub coefficient: Complex64,
}

impl Mode {
    /// `a·e^{2πiωt}`.
    #[inline]
    pub fn at(&self, t: f64) -> Complex64 {
        self.coefficient * phase_at(self.frequency.0, t)
    }
}

/// `e^{2πiωt}`. The product `ω·t` is split into a rounded part and its exact
/// rounding error before reduction modulo 1.
#[inline]
fn phase_at(freq: i64, t: f64) -> Complex64 {
    let (hi, lo) = math::two_product(freq as f64, t);
    let frac = hi - math::floor(hi);
    math::cis_turns(frac + lo)
}

pub(crate) fn check_bandwidth(bandwidth: u64) -> Result<()> {
    if bandwidth == 0 || !bandwidth.is_multiple_of(2) || bandwidth > i64::MAX as u64 {
        return Err(Error::InvalidBandwidth(bandwidth));
    }
    Ok(())
}

/// A set of distinct in-band frequencies with complex coefficients.
///
/// Modes are kept sorted by frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSpectrum {
    bandwidth: u64,
    modes: Vec<Mode>,
}

impl SparseSpectrum {
    pub fn new<I>(bandwidth: u64, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        check_bandwidth(bandwidth)?;
        let mut out = Vec::new();
        for (freq, coefficient) in modes {
            let frequency = Frequency::new(freq, bandwidth)?;
            if !(coefficient.re.is_finite() && coefficient.im.is_finite()) {
                return Err(Error::NonFiniteCoefficient(freq));
            }
            out.push(Mode {
                frequency,
                coefficient,
            });
        }
        out.sort_by_key(|m| m.frequency);
        if let Some(w) = out.windows(2).find(|w| w[0].frequency == w[1].frequency) {
            return Err(Error::DuplicateFrequency(w[0].frequency.0));
        }
        Ok(Self {
            bandwidth,
            modes: out,
        })
    }

    pub fn empty(bandwidth: u64) -> Result<Self> {
        Self::new(bandwidth, core::iter::empty())
    }

    pub fn bandwidth(&self) -> u64 {
        self.bandwidth
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn coefficient(&self, freq: i64) -> Option<Complex64> {
        self.modes
            .binary_search_by_key(&freq, |m| m.frequency.0)
            .ok()
            .map(|i| self.modes[i].coefficient)
    }

    /// Noiseless value `Σ a_j e^{2πiω_j t}` at any real `t`.
    pub fn evaluate(&self, t: f64) -> Complex64 {
        self.modes.iter().map(|m| m.at(t)).sum()
    }
}

/// Exact evaluation of a representation; touches no sample counter.
pub fn evaluate_representation(rep: &SparseSpectrum, t: f64) -> Complex64 {
    rep.evaluate(t)
}

/// A continuous-time signal that can be sampled anywhere in `[0, 1)`.
///
/// Every evaluation increments [`samples_taken`](Self::samples_taken). With
/// `noise_sigma > 0` each sample carries an independent circular complex
/// Gaussian with total variance `σ²` (`σ²/2` on each axis).
#[derive(Debug, Clone)]
pub struct SignalSource {
    spectrum: SparseSpectrum,
    noise_sigma: f64,
    seed: u64,
    rng: ChaCha8Rng,
    samples_taken: u64,
}

impl SignalSource {
    /// A noiseless source.
    pub fn new(spectrum: SparseSpectrum) -> Self {
        Self {
            spectrum,
            noise_sigma: 0.0,
            seed: 0,
            rng: ChaCha8Rng::seed_from_u64(0),
            samples_taken: 0,
        }
    }

    pub fn with_noise(spectrum: SparseSpectrum, noise_sigma: f64, seed: u64) -> Result<Self> {
        if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
            return Err(Error::InvalidNoise(noise_sigma));
        }
        Ok(Self {
            spectrum,
            noise_sigma,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            samples_taken: 0,
        })
    }

    pub fn spectrum(&self) -> &SparseSpectrum {
        &self.spectrum
    }

    pub fn bandwidth(&self) -> u64 {
        self.spectrum.bandwidth
    }

    pub fn noise_sigma(&self) -> f64 {
        self.noise_sigma
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn samples_taken(&self) -> u64 {
        self.samples_taken
    }

    /// Samples the signal at `t ∈ [0, 1)`.
    pub fn evaluate(&mut self, t: f64) -> Result<Complex64> {
        if !(0.0..1.0).contains(&t) {
            return Err(Error::TimeOutOfRange(t));
        }
        self.samples_taken += 1;
        let clean = self.spectrum.evaluate(t);
        if self.noise_sigma == 0.0 {
            return Ok(clean);
        }
        let scale = self.noise_sigma * core::f64::consts::FRAC_1_SQRT_2;
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Ok(clean + Complex64::new(re, im) * scale)
    }
}

/// Draws `k` distinct frequencies uniformly from `[-N/2, N/2)` with
/// coefficients `e^{2πiθ}`, `θ ~ U[0, 1)`. Reproducible from `seed`.
pub fn generate_random_signal(k: usize, bandwidth: u64, seed: u64) -> Result<SparseSpectrum> {
    check_bandwidth(bandwidth)?;
    if k as u64 > bandwidth {
        return Err(Error::SparsityExceedsBand {
            k: k as u64,
            n: bandwidth,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = (bandwidth / 2) as i64;
    let mut freqs: Vec<i64> = rand::seq::index::sample(&mut rng, bandwidth as usize, k)
        .into_iter()
        .map(|i| i as i64 - half)
        .collect();
    freqs.sort_unstable();
    let modes: Vec<(i64, Complex64)> = freqs
        .into_iter()
        .map(|f| {
            let theta: f64 = rng.random();
            (f, math::cis_turns(theta))
        })
        .collect();
    SparseSpectrum::new(bandwidth, modes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_signal() {
        let s = SparseSpectrum::new(16, [(0, c(1.0, 0.0))]).unwrap();
        let mut src = SignalSource::new(s);
        let v = src.evaluate(0.37).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn single_mode_at_zero_is_its_coefficient() {
        let a = c(0.3, -1.7);
        let s = SparseSpectrum::new(1024, [(-311, a)]).unwrap();
        let mut src = SignalSource::new(s);
        assert_eq!(src.evaluate(0.0).unwrap(), a);
    }

    #[test]
    fn cosine_zero_crossing() {
        let s = SparseSpectrum::new(16, [(3, c(1.0, 0.0)), (-3, c(1.0, 0.0))]).unwrap();
        let mut src = SignalSource::new(s);
        let v = src.evaluate(1.0 / 12.0).unwrap();
        assert!(v.norm() < 1e-14, "{v}");
    }

    #[test]
    fn rejects_times_outside_unit_interval() {
        let mut src = SignalSource::new(SparseSpectrum::empty(8).unwrap());
        assert_eq!(src.evaluate(1.0), Err(Error::TimeOutOfRange(1.0)));
        assert_eq!(src.evaluate(-0.1), Err(Error::TimeOutOfRange(-0.1)));
        assert!(src.evaluate(f64::NAN).is_err());
        assert_eq!(src.samples_taken(), 0);
    }

    #[test]
    fn sample_counter_counts_every_evaluation() {
        let s = generate_random_signal(5, 64, 3).unwrap();
        let mut src = SignalSource::with_noise(s, 0.1, 9).unwrap();
        for i in 0..37 {
            src.evaluate(i as f64 / 37.0).unwrap();
        }
        assert_eq!(src.samples_taken(), 37);
    }

    #[test]
    fn representation_evaluation() {
        let empty = SparseSpectrum::empty(64).unwrap();
        assert_eq!(evaluate_representation(&empty, 0.25), c(0.0, 0.0));

        let rep = SparseSpectrum::new(64, [(5, c(0.0, 2.0))]).unwrap();
        let v = evaluate_representation(&rep, 0.1);
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, -2.0, epsilon = 1e-14);
    }

    #[test]
    fn perfect_subtraction() {
        let s = generate_random_signal(12, 4096, 1).unwrap();
        let rep = s.clone();
        let mut src = SignalSource::new(s);
        for j in 0..50 {
            let t = j as f64 / 50.0 + 1e-4;
            let d = src.evaluate(t).unwrap() - evaluate_representation(&rep, t);
            assert_eq!(d, c(0.0, 0.0));
        }
    }

    #[test]
    fn spectrum_validation() {
        assert_eq!(
            SparseSpectrum::empty(7).unwrap_err(),
            Error::InvalidBandwidth(7)
        );
        assert_eq!(
            SparseSpectrum::new(8, [(4, c(1.0, 0.0))]).unwrap_err(),
            Error::FrequencyOutOfBand { freq: 4, half: 4 }
        );
        assert!(SparseSpectrum::new(8, [(-4, c(1.0, 0.0))]).is_ok());
        assert_eq!(
            SparseSpectrum::new(8, [(1, c(1.0, 0.0)), (1, c(2.0, 0.0))]).unwrap_err(),
            Error::DuplicateFrequency(1)
        );
        assert_eq!(
            SparseSpectrum::new(8, [(1, c(f64::NAN, 0.0))]).unwrap_err(),
            Error::NonFiniteCoefficient(1)
        );
    }

    #[test]
    fn generator_exhaustive_draw() {
        let s = generate_random_signal(32, 32, 11).unwrap();
        let freqs: Vec<i64> = s.modes().iter().map(|m| m.frequency.value()).collect();
        assert_eq!(freqs, (-16..16).collect::<Vec<_>>());
    }

    #[test]
    fn generator_unit_coefficients_and_determinism() {
        let a = generate_random_signal(40, 1 << 20, 77).unwrap();
        let b = generate_random_signal(40, 1 << 20, 77).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
        for m in a.modes() {
            assert_abs_diff_eq!(m.coefficient.norm(), 1.0, epsilon = 1e-15);
        }
        assert_ne!(a, generate_random_signal(40, 1 << 20, 78).unwrap());
    }

    #[test]
    fn generator_rejects_oversized_k() {
        assert_eq!(
            generate_random_signal(9, 8, 0).unwrap_err(),
            Error::SparsityExceedsBand { k: 9, n: 8 }
        );
    }

    #[test]
    fn noise_is_reproducible_from_seed() {
        let s = generate_random_signal(3, 64, 0).unwrap();
        let mut a = SignalSource::with_noise(s.clone(), 0.5, 42).unwrap();
        let mut b = SignalSource::with_noise(s, 0.5, 42).unwrap();
        for j in 0..20 {
            let t = j as f64 / 20.0;
            assert_eq!(a.evaluate(t).unwrap(), b.evaluate(t).unwrap());
        }
    }

    #[test]
    fn large_frequencies_keep_phase_accuracy() {
        // 2^21 - 1 at t = 0.5 + 2^-23 has an exactly representable product.
        let w = (1i64 << 21) - 1;
        let s = SparseSpectrum::new(1 << 22, [(w, c(1.0, 0.0))]).unwrap();
        let t = 0.5 + 1.0 / (1u64 << 23) as f64;
        let turns = (w as f64 * t).rem_euclid(1.0);
        let expect = Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI * turns);
        assert!((s.evaluate(t) - expect).norm() < 1e-12);
    }
}

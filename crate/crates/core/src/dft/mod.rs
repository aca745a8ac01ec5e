//! Shifted sub-sampled DFTs.
//!
//! A pass samples the signal on the grid `j/p + ε`, `j = 0..p`, and takes a
//! length-`p` forward DFT. With kernel `e^{-2πi jh/p}` a frequency `ω` lands
//! in bin `h = ω mod p` (taken in `[0, p)`) with value `p·a·e^{2πiεω}`.

mod fft;

use alloc::vec::Vec;

use num_complex::Complex64;

pub use fft::{fft, ifft, naive_dft, Direction, FftPlan};

use crate::signal::{SignalSource, SparseSpectrum};
use crate::{Error, Result};

/// `values[j] = S(j/p + shift)`, possibly minus a representation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleArray {
    shift: f64,
    values: Vec<Complex64>,
}

impl SampleArray {
    /// Wraps externally produced samples.
    pub fn from_values(shift: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySampleLength);
        }
        Ok(Self { shift, values })
    }

    pub fn p(&self) -> usize {
        self.values.len()
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Forward DFT of a [`SampleArray`]; `bins[h]` for `h ∈ [0, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSlice {
    shift: f64,
    bins: Vec<Complex64>,
}

impl SpectrumSlice {
    pub fn p(&self) -> usize {
        self.bins.len()
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn bins(&self) -> &[Complex64] {
        &self.bins
    }
}

/// Unshifted and `ε`-shifted spectra of one sample length.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedPair {
    pub unshifted: SpectrumSlice,
    pub shifted: SpectrumSlice,
}

impl ShiftedPair {
    pub fn p(&self) -> usize {
        self.unshifted.p()
    }

    pub fn epsilon(&self) -> f64 {
        self.shifted.shift
    }

    /// The two values of bin `h` as a reading for reconstruction.
    pub fn reading(&self, h: usize) -> crate::recon::BinReading {
        crate::recon::BinReading {
            h,
            unshifted: self.unshifted.bins[h],
            shifted: self.shifted.bins[h],
            p: self.p(),
            epsilon: self.epsilon(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DftMethod {
    #[default]
    Fast,
    /// `O(p²)` direct summation; the test oracle.
    Naive,
}

fn grid_times(p: usize, shift: f64) -> Result<impl Iterator<Item = f64>> {
    if p == 0 {
        return Err(Error::EmptySampleLength);
    }
    if !(shift.is_finite() && shift >= 0.0) {
        return Err(Error::InvalidShift(shift));
    }
    let last = (p - 1) as f64 / p as f64 + shift;
    if last >= 1.0 {
        return Err(Error::ShiftTooLarge { p, shift });
    }
    Ok((0..p).map(move |j| j as f64 / p as f64 + shift))
}

/// Samples `source` on `j/p + shift` and subtracts `rep` at the same points.
///
/// Consumes exactly `p` samples. The grid is validated before any sample is
/// taken, so a rejected call leaves the counter untouched.
pub fn collect_samples(
    source: &mut SignalSource,
    rep: &SparseSpectrum,
    p: usize,
    shift: f64,
) -> Result<SampleArray> {
    let times = grid_times(p, shift)?;
    let mut values = Vec::with_capacity(p);
    for t in times {
        let mut v = source.evaluate(t)?;
        if !rep.is_empty() {
            v -= rep.evaluate(t);
        }
        values.push(v);
    }
    Ok(SampleArray { shift, values })
}

/// Unnormalized forward DFT, `bins[h] = Σ_j values[j]·e^{-2πi jh/p}`.
pub fn forward_dft(samples: &SampleArray) -> SpectrumSlice {
    forward_dft_with(samples, DftMethod::Fast)
}

pub fn forward_dft_with(samples: &SampleArray, method: DftMethod) -> SpectrumSlice {
    let bins = match method {
        DftMethod::Fast => {
            let mut bins = samples.values.clone();
            fft(&mut bins);
            bins
        }
        DftMethod::Naive => naive_dft(&samples.values, Direction::Forward),
    };
    SpectrumSlice {
        shift: samples.shift,
        bins,
    }
}

/// Samples both grids, transforms them and removes `rep` from the bins;
/// consumes exactly `2p` samples.
pub fn take_pair(
    source: &mut SignalSource,
    rep: &SparseSpectrum,
    p: usize,
    epsilon: f64,
) -> Result<ShiftedPair> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidShift(epsilon));
    }
    // validate the shifted grid up front so no samples are wasted
    let _ = grid_times(p, epsilon)?;
    let plan = FftPlan::new(p);
    let empty = SparseSpectrum::empty(source.bandwidth())?;
    let mut transform = |shift| -> Result<SpectrumSlice> {
        let mut samples = collect_samples(source, &empty, p, shift)?;
        plan.process(&mut samples.values, Direction::Forward);
        // subtracting rep from the samples is the same as removing p·a·e^{2πiωs}
        // from bin ω mod p, at O(k) instead of O(kp)
        for m in rep.modes() {
            samples.values[m.frequency.residue(p)] -= m.at(shift) * p as f64;
        }
        Ok(SpectrumSlice {
            shift,
            bins: samples.values,
        })
    };
    let unshifted = transform(0.0)?;
    let shifted = transform(epsilon)?;
    Ok(ShiftedPair { unshifted, shifted })
}

/// Magnitude floor below which a bin counts as empty:
/// `1e-8·p·max(1, scale)`, where `scale` is the largest coefficient
/// magnitude seen so far (bin magnitude over `p`).
pub fn default_floor(p: usize, coefficient_scale: f64) -> f64 {
    1e-8 * p as f64 * coefficient_scale.max(1.0)
}

/// Bins sorted by unshifted magnitude, largest first, ties to the lower
/// index. Bins with magnitude `<= floor` are dropped before truncating to
/// `count`.
pub fn top_bins(pair: &ShiftedPair, count: usize, floor: f64) -> Vec<usize> {
    let bins = pair.unshifted.bins();
    let mut idx: Vec<(usize, f64)> = bins
        .iter()
        .enumerate()
        .map(|(h, z)| (h, z.norm()))
        .filter(|&(_, m)| m > floor)
        .collect();
    idx.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    idx.truncate(count);
    idx.into_iter().map(|(h, _)| h).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::generate_random_signal;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn source(modes: &[(i64, Complex64)], n: u64) -> SignalSource {
        SignalSource::new(SparseSpectrum::new(n, modes.iter().copied()).unwrap())
    }

    fn empty(n: u64) -> SparseSpectrum {
        SparseSpectrum::empty(n).unwrap()
    }

    #[test]
    fn constant_samples() {
        let mut src = source(&[(0, c(1.0, 0.0))], 16);
        let s = collect_samples(&mut src, &empty(16), 4, 0.0).unwrap();
        assert_eq!(s.values(), &[c(1.0, 0.0); 4]);
        assert_eq!(src.samples_taken(), 4);
        let spec = forward_dft(&s);
        assert!((spec.bins()[0] - c(4.0, 0.0)).norm() < 1e-15);
        assert!(spec.bins()[1..].iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn subtracting_the_source_leaves_zeros() {
        let spec = generate_random_signal(9, 1024, 4).unwrap();
        let mut src = SignalSource::new(spec.clone());
        let s = collect_samples(&mut src, &spec, 31, 1.0 / 2048.0).unwrap();
        assert!(s.values().iter().all(|z| *z == c(0.0, 0.0)));
    }

    #[test]
    fn residue_of_large_frequency() {
        let mut src = source(&[(100, c(1.0, 0.0))], 1024);
        let s = collect_samples(&mut src, &empty(1024), 7, 0.0).unwrap();
        for (j, v) in s.values().iter().enumerate() {
            let expect = Complex64::from_polar(1.0, 2.0 * PI * 2.0 * j as f64 / 7.0);
            assert!((v - expect).norm() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn grid_validation() {
        let mut src = source(&[(0, c(1.0, 0.0))], 16);
        let e = empty(16);
        assert_eq!(
            collect_samples(&mut src, &e, 0, 0.0).unwrap_err(),
            Error::EmptySampleLength
        );
        assert_eq!(
            collect_samples(&mut src, &e, 4, 0.25).unwrap_err(),
            Error::ShiftTooLarge { p: 4, shift: 0.25 }
        );
        assert!(collect_samples(&mut src, &e, 4, -0.1).is_err());
        assert!(take_pair(&mut src, &e, 4, 0.0).is_err());
        assert!(take_pair(&mut src, &e, 4, 0.3).is_err());
        assert_eq!(src.samples_taken(), 0);
    }

    #[test]
    fn naive_and_fast_agree_on_length_13() {
        let values: Vec<Complex64> = (0..13)
            .map(|j| c((j as f64 * 0.7).sin(), (j as f64 * 1.3).cos()))
            .collect();
        let s = SampleArray::from_values(0.0, values).unwrap();
        let a = forward_dft_with(&s, DftMethod::Fast);
        let b = forward_dft_with(&s, DftMethod::Naive);
        let err = a
            .bins()
            .iter()
            .zip(b.bins())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10);
    }

    #[test]
    fn single_mode_pair() {
        let n = 1024;
        let a = Complex64::from_polar(1.0, 0.7);
        let w = -333;
        let eps = 1.0 / (2.0 * n as f64);
        for p in [5usize, 7, 31, 64, 101] {
            let mut src = source(&[(w, a)], n);
            let pair = take_pair(&mut src, &empty(n), p, eps).unwrap();
            assert_eq!(src.samples_taken(), 2 * p as u64);
            let h = w.rem_euclid(p as i64) as usize;
            let pf = p as f64;
            assert!((pair.unshifted.bins()[h] - a * pf).norm() < 1e-10 * pf);
            let rot = Complex64::from_polar(1.0, 2.0 * PI * eps * w as f64);
            assert!((pair.shifted.bins()[h] - a * pf * rot).norm() < 1e-10 * pf);
            for other in (0..p).filter(|&x| x != h) {
                assert!(pair.unshifted.bins()[other].norm() < 1e-9 * pf);
                assert!(pair.shifted.bins()[other].norm() < 1e-9 * pf);
            }
        }
    }

    #[test]
    fn top_bins_ordering() {
        let n = 4096;
        let e = empty(n);
        let mut zero = SignalSource::new(empty(n));
        let pair = take_pair(&mut zero, &e, 11, 1.0 / 8192.0).unwrap();
        assert!(top_bins(&pair, 5, default_floor(11, 0.0)).is_empty());

        let mut one = source(&[(1000, c(0.0, 1.0))], n);
        let pair = take_pair(&mut one, &e, 11, 1.0 / 8192.0).unwrap();
        assert_eq!(top_bins(&pair, 1, default_floor(11, 1.0)), vec![1000 % 11]);

        // 7 ≡ 7, -20 ≡ 2 (mod 11)
        let mut two = source(&[(7, c(0.5, 0.0)), (-20, c(0.0, 2.0))], n);
        let pair = take_pair(&mut two, &e, 11, 1.0 / 8192.0).unwrap();
        assert_eq!(top_bins(&pair, 5, default_floor(11, 2.0)), vec![2, 7]);
        assert_eq!(top_bins(&pair, 1, default_floor(11, 2.0)), vec![2]);
        assert_eq!(top_bins(&pair, 0, 0.0), Vec::<usize>::new());
    }

    #[test]
    fn top_bins_ties_prefer_lower_index() {
        let slice = |bins: Vec<Complex64>| SpectrumSlice { shift: 0.0, bins };
        let bins = vec![
            c(0.0, 0.0),
            c(0.0, 1.0),
            c(0.5, 0.0),
            c(-1.0, 0.0),
            c(0.0, 0.0),
        ];
        let pair = ShiftedPair {
            unshifted: slice(bins.clone()),
            shifted: slice(bins),
        };
        assert_eq!(top_bins(&pair, 3, 1e-6), vec![1, 3, 2]);
        assert_eq!(top_bins(&pair, 9, 0.5), vec![1, 3]);
    }

    #[test]
    fn pair_subtraction_matches_time_domain() {
        let n = 1 << 12;
        let truth = generate_random_signal(30, n, 21).unwrap();
        let rep = generate_random_signal(20, n, 22).unwrap();
        let (p, eps) = (97, 1.0 / (2.0 * n as f64));
        let pair = take_pair(&mut SignalSource::new(truth.clone()), &rep, p, eps).unwrap();
        let mut src = SignalSource::new(truth);
        for (slice, shift) in [(&pair.unshifted, 0.0), (&pair.shifted, eps)] {
            let direct = forward_dft(&collect_samples(&mut src, &rep, p, shift).unwrap());
            for (a, b) in slice.bins().iter().zip(direct.bins()) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }
}

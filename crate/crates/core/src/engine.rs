//! The recovery loop.
//!
//! Each pass picks a sample length `p` for the `k*` frequencies still
//! missing, takes an unshifted/shifted pair of length-`p` DFTs (of the
//! residual when adaptive), and accepts every one of the `k*` largest bins
//! whose magnitude ratio passes the aliasing test. The run ends once the
//! representation holds `k` distinct frequencies or the pass cap is hit.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dft::{default_floor, take_pair, top_bins, ShiftedPair};
use crate::recon::{
    aliasing_test, estimate_coefficient, reconstruct_frequency, round_to_congruent,
    snap_to_integer, Tolerance,
};
use crate::schedule::{worst_case_count, Schedule};
use crate::signal::{check_bandwidth, SignalSource, SparseSpectrum};
use crate::{math, Error, Result};

pub use crate::schedule::Variant;

/// Monotonic time source in nanoseconds.
pub trait Clock {
    fn now_nanos(&mut self) -> u64;
}

/// A clock that always reads zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_nanos(&mut self) -> u64 {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TolerancePolicy {
    /// `τ = p/N` for a pass of length `p`.
    PerPass,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub bandwidth: u64,
    pub variant: Variant,
    pub adaptive: bool,
    pub c1: f64,
    /// Upper oversampling factor; Las Vegas only.
    pub c2: f64,
    pub epsilon: f64,
    pub tolerance: TolerancePolicy,
    /// Round reconstructed frequencies to the congruent lattice and widen the
    /// tolerance for noise of standard deviation `noise_sigma`.
    pub noise_mode: bool,
    pub noise_sigma: f64,
    /// In noise mode bins below `noise_floor·σ·√p` count as empty.
    pub noise_floor: f64,
    /// Relative to the largest coefficient magnitude seen.
    pub prune_floor: f64,
    /// `None` picks the default for the variant.
    pub max_passes: Option<usize>,
    /// Adaptive only: keep going after `k` terms until a pass sees an empty
    /// residual.
    pub verify: bool,
    pub seed: u64,
}

impl EngineConfig {
    /// Defaults: deterministic, adaptive, `c1 = 5`, `c2 = 10`, `ε = 1/2N`.
    pub fn new(bandwidth: u64) -> Self {
        Self {
            bandwidth,
            variant: Variant::Deterministic,
            adaptive: true,
            c1: 5.0,
            c2: 10.0,
            epsilon: 1.0 / (2.0 * bandwidth as f64),
            tolerance: TolerancePolicy::PerPass,
            noise_mode: false,
            noise_sigma: 0.0,
            noise_floor: 5.0,
            prune_floor: 1e-8,
            max_passes: None,
            verify: false,
            seed: 0,
        }
    }

    pub fn las_vegas(mut self, seed: u64) -> Self {
        self.variant = Variant::LasVegas;
        self.seed = seed;
        self
    }

    pub fn non_adaptive(mut self) -> Self {
        self.adaptive = false;
        self
    }

    pub fn noisy(mut self, sigma: f64) -> Self {
        self.noise_mode = true;
        self.noise_sigma = sigma;
        self
    }

    /// Pass cap used when `max_passes` is `None`: the worst-case isolation
    /// bound `1 + (k-1)⌊log_{c1 k} N⌋` for the deterministic schedule and
    /// four times that for Las Vegas, which has no worst-case bound.
    pub fn default_max_passes(&self, k: usize) -> Result<usize> {
        let bound = worst_case_count(k, self.c1 * k as f64, self.bandwidth)? as usize;
        Ok(match self.variant {
            Variant::Deterministic => bound,
            Variant::LasVegas => 4 * bound,
        })
    }

    fn validate(&self) -> Result<()> {
        check_bandwidth(self.bandwidth)?;
        if !(self.c1 > 1.0 && self.c1.is_finite()) {
            return Err(Error::InvalidOversampling {
                c1: self.c1,
                c2: self.c2,
            });
        }
        if self.variant == Variant::LasVegas && !(self.c2 > self.c1 && self.c2.is_finite()) {
            return Err(Error::InvalidOversampling {
                c1: self.c1,
                c2: self.c2,
            });
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0 / self.bandwidth as f64) {
            return Err(Error::InvalidConfig("epsilon must lie in (0, 1/N]"));
        }
        if let TolerancePolicy::Fixed(t) = self.tolerance {
            Tolerance::new(t)?;
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(Error::InvalidNoise(self.noise_sigma));
        }
        if !(self.prune_floor >= 0.0 && self.noise_floor >= 0.0) {
            return Err(Error::InvalidConfig("floors must be nonnegative"));
        }
        if self.max_passes == Some(0) {
            return Err(Error::InvalidConfig("max_passes must be at least 1"));
        }
        Ok(())
    }
}

/// Recovered modes keyed by frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    bandwidth: u64,
    modes: BTreeMap<i64, Complex64>,
}

impl Representation {
    pub fn new(bandwidth: u64) -> Self {
        Self {
            bandwidth,
            modes: BTreeMap::new(),
        }
    }

    pub fn bandwidth(&self) -> u64 {
        self.bandwidth
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn get(&self, freq: i64) -> Option<Complex64> {
        self.modes.get(&freq).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.modes.iter().map(|(&f, &c)| (f, c))
    }

    pub fn to_spectrum(&self) -> SparseSpectrum {
        SparseSpectrum::new(self.bandwidth, self.iter())
            .expect("representation keys are distinct in-band frequencies")
    }
}

/// Sums equal frequencies and drops entries with `|coefficient| < floor`.
pub fn combine_and_prune<I>(bandwidth: u64, terms: I, floor: f64) -> Representation
where
    I: IntoIterator<Item = (i64, Complex64)>,
{
    let mut rep = Representation::new(bandwidth);
    for (f, c) in terms {
        *rep.modes.entry(f).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    rep.modes.retain(|_, c| c.norm() >= floor);
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    TargetReached,
    MaxPasses,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub passes: usize,
    pub samples: u64,
    pub elapsed_nanos: u64,
    /// Sample length of each pass.
    pub lengths: Vec<u64>,
    /// Outstanding count `k*` each pass was sized for.
    pub outstanding: Vec<usize>,
    pub accepted_per_pass: Vec<usize>,
    /// Size of the representation after each pass.
    pub sizes: Vec<usize>,
    pub terminated_by: Termination,
}

/// [`recover_with_clock`] without timing.
pub fn recover(
    source: &mut SignalSource,
    k: usize,
    config: &EngineConfig,
) -> Result<(Representation, RunStats)> {
    recover_with_clock(source, k, config, &mut NoClock)
}

/// Recovers a `k`-sparse spectrum from `source`.
///
/// Hitting the pass cap is not an error: the partial representation is
/// returned with [`Termination::MaxPasses`].
pub fn recover_with_clock<C: Clock + ?Sized>(
    source: &mut SignalSource,
    k: usize,
    config: &EngineConfig,
    clock: &mut C,
) -> Result<(Representation, RunStats)> {
    resume(
        source,
        k,
        config,
        Representation::new(config.bandwidth),
        clock,
    )
}

/// Continues a recovery from `initial` instead of an empty representation.
///
/// Passes after the first are sized from `k - |initial|`. A run started from a
/// complete representation does no passes unless `verify` is set.
pub fn resume<C: Clock + ?Sized>(
    source: &mut SignalSource,
    k: usize,
    config: &EngineConfig,
    initial: Representation,
    clock: &mut C,
) -> Result<(Representation, RunStats)> {
    config.validate()?;
    let n = config.bandwidth;
    for other in [source.bandwidth(), initial.bandwidth()] {
        if other != n {
            return Err(Error::BandwidthMismatch {
                source_n: other,
                config_n: n,
            });
        }
    }
    if k == 0 || k as u64 > n / 2 {
        return Err(Error::InvalidSparsity { k, max: n / 2 });
    }
    let max_passes = match config.max_passes {
        Some(m) => m,
        None => config.default_max_passes(k)?,
    };
    let mut schedule = match config.variant {
        Variant::Deterministic => Schedule::deterministic(config.c1)?,
        Variant::LasVegas => Schedule::las_vegas(config.c1, config.c2, config.seed)?,
    };

    let start = clock.now_nanos();
    let samples_before = source.samples_taken();
    let mut coefficient_scale = initial.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let mut rep = initial;
    let mut stats = RunStats {
        passes: 0,
        samples: 0,
        elapsed_nanos: 0,
        lengths: Vec::new(),
        outstanding: Vec::new(),
        accepted_per_pass: Vec::new(),
        sizes: Vec::new(),
        terminated_by: Termination::MaxPasses,
    };
    let verify = config.verify && config.adaptive;
    // residual size seen by the last pass, for sizing verification passes
    let mut residual_estimate = 0usize;

    loop {
        let deficit = k.saturating_sub(rep.len());
        let verifying = deficit == 0;
        if verifying && !verify {
            stats.terminated_by = Termination::TargetReached;
            break;
        }
        if stats.passes >= max_passes {
            break;
        }
        let k_star = match (config.adaptive, verifying) {
            (false, _) => k,
            (true, false) => deficit,
            (true, true) => residual_estimate.max(1),
        };
        let p = schedule.next_length(k_star)? as usize;
        let subtract = if config.adaptive {
            rep.to_spectrum()
        } else {
            SparseSpectrum::empty(n)?
        };
        let pair = take_pair(source, &subtract, p, config.epsilon)?;

        let peak = pair
            .unshifted
            .bins()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        coefficient_scale = coefficient_scale.max(peak / p as f64);
        let mut floor = default_floor(p, coefficient_scale);
        if config.noise_mode {
            floor = floor.max(config.noise_floor * config.noise_sigma * math::sqrt(p as f64));
        }
        let significant = pair
            .unshifted
            .bins()
            .iter()
            .filter(|z| z.norm() > floor)
            .count();
        if verifying && significant == 0 {
            stats.passes += 1;
            stats.lengths.push(p as u64);
            stats.outstanding.push(0);
            stats.accepted_per_pass.push(0);
            stats.sizes.push(rep.len());
            stats.terminated_by = Termination::TargetReached;
            break;
        }
        residual_estimate = significant;

        let count = if verifying { significant } else { k_star };
        let terms = accept_terms(&pair, count, floor, config)?;
        stats.passes += 1;
        stats.lengths.push(p as u64);
        stats.outstanding.push(if verifying { 0 } else { k_star });
        stats.accepted_per_pass.push(terms.len());

        let prune = config.prune_floor * coefficient_scale;
        rep = if config.adaptive {
            combine_and_prune(n, rep.iter().chain(terms), prune)
        } else {
            // a non-adaptive pass re-measures the full signal, so a repeated
            // frequency replaces the earlier estimate
            let mut merged = rep.modes;
            merged.extend(terms);
            combine_and_prune(n, merged, prune)
        };
        stats.sizes.push(rep.len());
    }

    stats.samples = source.samples_taken() - samples_before;
    stats.elapsed_nanos = clock.now_nanos().saturating_sub(start);
    Ok((rep, stats))
}

fn pass_tolerance(config: &EngineConfig, p: usize, bin: Complex64) -> Result<Tolerance> {
    let mut tau = match config.tolerance {
        TolerancePolicy::PerPass => p as f64 / config.bandwidth as f64,
        TolerancePolicy::Fixed(t) => t,
    };
    if config.noise_mode {
        tau += 3.0 * config.noise_sigma * math::sqrt(2.0 * p as f64) / bin.norm();
    }
    Tolerance::new(tau.min(1.0 - f64::EPSILON))
}

fn accept_terms(
    pair: &ShiftedPair,
    count: usize,
    floor: f64,
    config: &EngineConfig,
) -> Result<Vec<(i64, Complex64)>> {
    let p = pair.p();
    let n = config.bandwidth;
    let mut out = Vec::new();
    for h in top_bins(pair, count, floor) {
        let reading = pair.reading(h);
        let tol = pass_tolerance(config, p, reading.unshifted)?;
        if !aliasing_test(&reading, tol)? {
            continue;
        }
        let estimate = reconstruct_frequency(&reading)?;
        let freq = if config.noise_mode {
            round_to_congruent(estimate, h as i64, p as u64, n)?
        } else {
            match snap_to_integer(estimate, h, p, n) {
                Some(f) => f,
                None => continue,
            }
        };
        out.push((freq, estimate_coefficient(&reading)));
    }
    Ok(out)
}

//! Sparse Fourier transform by shifted sub-sampling.
//!
//! A signal `S(t) = Σ a_j e^{2πi ω_j t}` with `k` integer frequencies in the
//! band `[-N/2, N/2)` is recovered from short DFTs of length `p ≈ c·k`. Each
//! pass samples the signal on two grids, `j/p` and `j/p + ε`; for a bin that
//! holds a single frequency the ratio of the two DFT values is exactly
//! `e^{2πiεω}`, which yields `ω` directly and, through its unit modulus,
//! certifies that the bin is not aliased.
//!
//! The crate is `no_std` and needs only `alloc`. Wall-clock timing is
//! injected through [`engine::Clock`]; IO and the benchmark CLI live in the
//! `phaseshift-bench` companion crate.
//!
//! ```
//! use phaseshift::{recover, Complex64, EngineConfig, SignalSource, SparseSpectrum};
//!
//! let n = 1 << 16;
//! let truth = SparseSpectrum::new(n, [(-700, Complex64::new(1.0, 0.0)), (12_345, Complex64::new(0.0, 2.0))])?;
//! let mut source = SignalSource::new(truth);
//! let (rep, stats) = recover(&mut source, 2, &EngineConfig::new(n))?;
//! assert_eq!(rep.iter().map(|(f, _)| f).collect::<Vec<_>>(), [-700, 12_345]);
//! assert!(stats.samples < 100);
//! # Ok::<(), phaseshift::Error>(())
//! ```
//!
//! Module map:
//!
//! - [`signal`]: sparse spectra, the sampled signal source, random signals.
//! - [`dft`]: shifted sample arrays and arbitrary-length DFTs.
//! - [`recon`]: frequency reconstruction, the aliasing test, rounding.
//! - [`schedule`]: sample-length schedules and the worst-case pass bound.
//! - [`engine`]: the recovery loop.
//! - [`analysis`]: occupancy statistics, the EMD(1) metric, dense oracles.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod dft;
pub mod engine;
mod error;
mod math;
pub mod recon;
pub mod schedule;
pub mod signal;

pub use num_complex::Complex64;

pub use engine::{
    combine_and_prune, recover, recover_with_clock, resume, Clock, EngineConfig, NoClock,
    Representation, RunStats, Termination, TolerancePolicy, Variant,
};
pub use error::Error;
pub use signal::{generate_random_signal, Frequency, Mode, SignalSource, SparseSpectrum};

pub type Result<T, E = Error> = core::result::Result<T, E>;

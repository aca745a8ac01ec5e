use thiserror::Error;

/// Contract violations reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("bandwidth must be a positive even integer, got {0}")]
    InvalidBandwidth(u64),
    #[error("frequency {freq} outside the band [-{half}, {half})")]
    FrequencyOutOfBand { freq: i64, half: i64 },
    #[error("frequency {0} appears more than once")]
    DuplicateFrequency(i64),
    #[error("coefficient for frequency {0} is not finite")]
    NonFiniteCoefficient(i64),
    #[error("sample time {0} outside [0, 1)")]
    TimeOutOfRange(f64),
    #[error("noise standard deviation must be finite and nonnegative, got {0}")]
    InvalidNoise(f64),
    #[error("cannot draw {k} distinct frequencies from a band of {n}")]
    SparsityExceedsBand { k: u64, n: u64 },
    #[error("sample length must be at least 1")]
    EmptySampleLength,
    #[error("shift must be finite and nonnegative, got {0}")]
    InvalidShift(f64),
    #[error("sample grid of length {p} shifted by {shift} leaves [0, 1)")]
    ShiftTooLarge { p: usize, shift: f64 },
    #[error("zero unshifted bin value, the phase ratio is undefined")]
    UndefinedRatio,
    #[error("tolerance must lie in (0, 1), got {0}")]
    InvalidTolerance(f64),
    #[error("bin {h} outside [0, {p})")]
    BinOutOfRange { h: i64, p: u64 },
    #[error("no integer congruent to {h} mod {p} in the band of {n}")]
    NoCongruentFrequency { h: i64, p: u64, n: u64 },
    #[error("invalid oversampling interval c1={c1}, c2={c2}")]
    InvalidOversampling { c1: f64, c2: f64 },
    #[error("empty sample-length interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },
    #[error("sparsity {k} outside [1, {max}]")]
    InvalidSparsity { k: usize, max: u64 },
    #[error("bandwidth mismatch: source has {source_n}, config has {config_n}")]
    BandwidthMismatch { source_n: u64, config_n: u64 },
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("{0} must lie in (0, 1)")]
    InvalidFraction(f64),
    #[error("Newton iteration did not converge after {0} steps")]
    NoConvergence(usize),
}

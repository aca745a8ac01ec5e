use std::fmt::Write as _;

use phaseshift::analysis::emd1;
use phaseshift::{
    generate_random_signal, recover_with_clock, Clock, Representation, SignalSource,
    SparseSpectrum, Termination,
};

use crate::plan::{EngineTemplate, ExperimentPlan, GridPoint};
use crate::{BenchError, TrialRecord};

/// Noise streams are keyed off the trial seed but kept apart from the signal
/// draw.
const NOISE_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub exact: bool,
    /// ℓ2 distance between coefficients of frequencies present in both.
    pub l2_error: f64,
    /// NaN when the estimate is empty.
    pub emd1_error: f64,
}

pub fn score(rep: &Representation, truth: &SparseSpectrum) -> Result<Score, BenchError> {
    let mut exact = rep.len() == truth.len();
    let mut sq = 0.0;
    for m in truth.modes() {
        match rep.get(m.frequency.value()) {
            Some(c) => {
                let d = (c - m.coefficient).norm();
                exact &= d < 1e-8;
                sq += d * d;
            }
            None => exact = false,
        }
    }
    let estimate = rep.to_spectrum();
    let emd1_error = if estimate.is_empty() || truth.is_empty() {
        f64::NAN
    } else {
        emd1(&estimate, truth)?
    };
    Ok(Score {
        exact,
        l2_error: sq.sqrt(),
        emd1_error,
    })
}

/// Generates the signal for `seed`, recovers it and scores the result.
pub fn run_trial<C: Clock>(
    point: GridPoint,
    engine: &EngineTemplate,
    trial: usize,
    seed: u64,
    clock: &mut C,
) -> Result<TrialRecord, BenchError> {
    let truth = generate_random_signal(point.k, point.n, seed)?;
    let mut source = if point.sigma > 0.0 {
        SignalSource::with_noise(truth.clone(), point.sigma, seed ^ NOISE_SALT)?
    } else {
        SignalSource::new(truth.clone())
    };
    let config = engine.config(point.n, point.sigma, seed);
    let (rep, stats) = recover_with_clock(&mut source, point.k, &config, clock)?;
    let s = score(&rep, &truth)?;
    Ok(TrialRecord {
        variant: engine.variant.label().into(),
        adaptive: engine.adaptive,
        k: point.k,
        n: point.n,
        sigma: point.sigma,
        trial,
        seed,
        samples: stats.samples,
        elapsed_ns: stats.elapsed_nanos,
        passes: stats.passes,
        exact: s.exact,
        l2_error: s.l2_error,
        emd1_error: s.emd1_error,
        terminated_by: match stats.terminated_by {
            Termination::TargetReached => "target_reached",
            Termination::MaxPasses => "max_passes",
        }
        .into(),
    })
}

/// Runs every trial of every grid point, in grid order.
pub fn run_plan<C: Clock>(
    plan: &ExperimentPlan,
    clock: &mut C,
) -> Result<Vec<TrialRecord>, BenchError> {
    plan.validate()?;
    let mut rows = Vec::with_capacity(plan.grid().len() * plan.trials);
    for point in plan.grid() {
        for trial in 0..plan.trials {
            let seed = plan.seed.wrapping_add(trial as u64);
            rows.push(run_trial(point, &plan.engine, trial, seed, clock)?);
        }
    }
    Ok(rows)
}

/// Mean, min and max of one metric over a grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Stat {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        let (mut sum, mut n) = (0.0, 0usize);
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| !v.is_nan()) {
            sum += v;
            n += 1;
            min = min.min(v);
            max = max.max(v);
        }
        if n == 0 {
            return Self {
                mean: f64::NAN,
                min: f64::NAN,
                max: f64::NAN,
            };
        }
        Self {
            mean: sum / n as f64,
            min,
            max,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub variant: String,
    pub adaptive: bool,
    pub k: usize,
    pub n: u64,
    pub sigma: f64,
    pub trials: usize,
    pub exact_rate: f64,
    pub max_pass_hits: usize,
    pub samples: Stat,
    pub elapsed_ns: Stat,
    pub passes: Stat,
    pub emd1_error: Stat,
}

/// Groups consecutive rows that share a grid point.
pub fn summarize(records: &[TrialRecord]) -> Vec<Summary> {
    let key = |r: &TrialRecord| (r.variant.clone(), r.adaptive, r.k, r.n, r.sigma.to_bits());
    let mut out = Vec::new();
    let mut start = 0;
    while start < records.len() {
        let k0 = key(&records[start]);
        let end = start + records[start..].iter().take_while(|r| key(r) == k0).count();
        let rows = &records[start..end];
        let first = &rows[0];
        out.push(Summary {
            variant: first.variant.clone(),
            adaptive: first.adaptive,
            k: first.k,
            n: first.n,
            sigma: first.sigma,
            trials: rows.len(),
            exact_rate: rows.iter().filter(|r| r.exact).count() as f64 / rows.len() as f64,
            max_pass_hits: rows
                .iter()
                .filter(|r| r.terminated_by == "max_passes")
                .count(),
            samples: Stat::of(rows.iter().map(|r| r.samples as f64)),
            elapsed_ns: Stat::of(rows.iter().map(|r| r.elapsed_ns as f64)),
            passes: Stat::of(rows.iter().map(|r| r.passes as f64)),
            emd1_error: Stat::of(rows.iter().map(|r| r.emd1_error)),
        });
        start = end;
    }
    out
}

/// Fixed-width table of summaries.
pub fn format_summary(rows: &[Summary]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<6} {:>5} {:>5} {:>9} {:>6} {:>6} {:>6} {:>28} {:>30} {:>20} {:>32}",
        "var",
        "adapt",
        "k",
        "N",
        "sigma",
        "trials",
        "exact",
        "samples mean [min,max]",
        "elapsed_ns mean [min,max]",
        "passes mean [min,max]",
        "emd1 mean [min,max]"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<6} {:>5} {:>5} {:>9} {:>6} {:>6} {:>6.3} {:>10.1} [{:>6},{:>7}] {:>12.0} [{:>7.0},{:>7.0}] {:>6.2} [{:>3},{:>4}] {:>10.3e} [{:>9.2e},{:>9.2e}]",
            r.variant,
            if r.adaptive { "on" } else { "off" },
            r.k,
            r.n,
            r.sigma,
            r.trials,
            r.exact_rate,
            r.samples.mean,
            r.samples.min,
            r.samples.max,
            r.elapsed_ns.mean,
            r.elapsed_ns.min,
            r.elapsed_ns.max,
            r.passes.mean,
            r.passes.min,
            r.passes.max,
            r.emd1_error.mean,
            r.emd1_error.min,
            r.emd1_error.max,
        );
    }
    s
}

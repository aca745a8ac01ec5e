//! Dense length-`N` FFT timings on the same signals the sparse runs use.

use phaseshift::analysis::{dense_oracle, dense_samples, emd1};
use phaseshift::{generate_random_signal, Clock, Complex64, SparseSpectrum};
use rustfft::FftPlanner;

use crate::{BenchError, MonotonicClock, TrialRecord};

/// Largest bandwidth the baseline will allocate for.
pub const DENSE_CAP: u64 = phaseshift::analysis::DENSE_CAP;

/// One row per `(N, trial)`; only the transform itself is timed.
pub fn baseline_dense(
    ns: &[u64],
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<TrialRecord>, BenchError> {
    if let Some(&n) = ns.iter().find(|&&n| n > DENSE_CAP) {
        return Err(BenchError::Usage(format!(
            "dense baseline refuses N={n}: above the cap of {DENSE_CAP}"
        )));
    }
    if k == 0 || trials == 0 || ns.is_empty() {
        return Err(BenchError::Usage("baseline needs k, trials and N".into()));
    }
    let mut clock = MonotonicClock::new();
    let mut planner = FftPlanner::<f64>::new();
    let mut rows = Vec::new();
    for &n in ns {
        if k as u64 > n / 2 {
            return Err(BenchError::Usage(format!("k={k} exceeds N/2 for N={n}")));
        }
        let fft = planner.plan_fft_forward(n as usize);
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for trial in 0..trials {
            let trial_seed = seed.wrapping_add(trial as u64);
            let truth = generate_random_signal(k, n, trial_seed)?;
            let mut buf = dense_samples(&truth);
            let start = clock.now_nanos();
            fft.process_with_scratch(&mut buf, &mut scratch);
            let elapsed = clock.now_nanos() - start;

            let scale = 1.0 / n as f64;
            buf.iter_mut().for_each(|z| *z *= scale);
            let oracle = dense_oracle(&truth);
            let exact = buf.iter().zip(&oracle).all(|(a, b)| (a - b).norm() < 1e-8);
            let l2 = truth
                .modes()
                .iter()
                .map(|m| {
                    (buf[m.frequency.value().rem_euclid(n as i64) as usize] - m.coefficient)
                        .norm_sqr()
                })
                .sum::<f64>()
                .sqrt();
            let estimate = significant(&buf, n)?;
            let emd = if estimate.is_empty() {
                f64::NAN
            } else {
                emd1(&estimate, &truth)?
            };
            rows.push(TrialRecord {
                variant: "dense".into(),
                adaptive: false,
                k,
                n,
                sigma: 0.0,
                trial,
                seed: trial_seed,
                samples: n,
                elapsed_ns: elapsed,
                passes: 1,
                exact,
                l2_error: l2,
                emd1_error: emd,
                terminated_by: "complete".into(),
            });
        }
    }
    Ok(rows)
}

/// Entries above `1e-6` as a sparse spectrum, index `i` mapped back to band.
fn significant(coeffs: &[Complex64], n: u64) -> Result<SparseSpectrum, BenchError> {
    let half = (n / 2) as i64;
    let modes = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 1e-6)
        .map(|(i, &c)| {
            let i = i as i64;
            (if i >= half { i - n as i64 } else { i }, c)
        });
    Ok(SparseSpectrum::new(n, modes)?)
}

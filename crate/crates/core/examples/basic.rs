//! Recover a random 32-sparse spectrum with bandwidth 2^20.

use phaseshift::{generate_random_signal, recover, EngineConfig, SignalSource};

fn main() -> phaseshift::Result<()> {
    let n = 1 << 20;
    let truth = generate_random_signal(32, n, 7)?;
    let mut source = SignalSource::new(truth.clone());
    let (rep, stats) = recover(&mut source, 32, &EngineConfig::new(n))?;

    println!(
        "recovered {} modes in {} passes from {} samples (N = {n})",
        rep.len(),
        stats.passes,
        stats.samples
    );
    for (freq, coeff) in rep.iter().take(5) {
        let want = truth.coefficient(freq).expect("frequency is in the input");
        println!(
            "  ω = {freq:>8}  a = {coeff:.6}  |error| = {:.1e}",
            (coeff - want).norm()
        );
    }
    Ok(())
}

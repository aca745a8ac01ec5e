use phaseshift::dft::{collect_samples, forward_dft, SampleArray};
use phaseshift::{generate_random_signal, Complex64, SignalSource, SparseSpectrum};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_samples(p: usize, seed: u64) -> SampleArray {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..p)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    SampleArray::from_values(0.0, values).unwrap()
}

/// Direct summation with the exponent reduced mod p before the sincos.
fn direct(values: &[Complex64]) -> Vec<Complex64> {
    let p = values.len();
    (0..p)
        .map(|h| {
            values
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    let r = (j * h) % p;
                    x * Complex64::from_polar(
                        1.0,
                        -2.0 * std::f64::consts::PI * r as f64 / p as f64,
                    )
                })
                .sum()
        })
        .collect()
}

fn primes_above(start: usize, count: usize) -> Vec<usize> {
    (start..)
        .filter(|&m| (2..m).take_while(|d| d * d <= m).all(|d| m % d != 0))
        .take(count)
        .collect()
}

#[test]
fn matches_direct_summation() {
    let lengths = (1..=128).chain(primes_above(129, 20));
    for p in lengths {
        let s = random_samples(p, p as u64);
        let fast = forward_dft(&s);
        let slow = direct(s.values());
        let err = fast
            .bins()
            .iter()
            .zip(&slow)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-9 * p as f64, "p={p}: {err}");
    }
}

#[test]
fn parseval() {
    for p in 2..=512 {
        let s = random_samples(p, 1000 + p as u64);
        let lhs: f64 = forward_dft(&s).bins().iter().map(|z| z.norm_sqr()).sum();
        let rhs: f64 = p as f64 * s.values().iter().map(|z| z.norm_sqr()).sum::<f64>();
        assert!((lhs - rhs).abs() <= 1e-9 * rhs, "p={p}");
    }
}

proptest! {
    #[test]
    fn bins_are_sums_of_aliased_coefficients(k in 1usize..40, p in 1usize..300, seed in any::<u64>()) {
        let n = 1u64 << 14;
        let spectrum = generate_random_signal(k, n, seed).unwrap();
        let mut src = SignalSource::new(spectrum.clone());
        let empty = SparseSpectrum::empty(n).unwrap();
        let bins = forward_dft(&collect_samples(&mut src, &empty, p, 0.0).unwrap());
        let mut expect = vec![Complex64::new(0.0, 0.0); p];
        for m in spectrum.modes() {
            expect[m.frequency.value().rem_euclid(p as i64) as usize] += m.coefficient * p as f64;
        }
        for (got, want) in bins.bins().iter().zip(&expect) {
            prop_assert!((got - want).norm() <= 1e-9 * (p as f64) * (k as f64));
        }
    }
}

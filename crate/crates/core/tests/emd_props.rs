use phaseshift::analysis::{emd1, emd1_brute_force};
use phaseshift::{generate_random_signal, Complex64, SparseSpectrum};
use proptest::prelude::*;

fn spectrum(n: u64, modes: Vec<(i64, f64, f64)>) -> Option<SparseSpectrum> {
    let mut modes = modes;
    modes.sort_by_key(|m| m.0);
    modes.dedup_by_key(|m| m.0);
    SparseSpectrum::new(
        n,
        modes
            .into_iter()
            .map(|(f, re, im)| (f, Complex64::new(re, im))),
    )
    .ok()
}

fn modes(k: usize) -> impl Strategy<Value = Vec<(i64, f64, f64)>> {
    prop::collection::vec((-512i64..512, -2.0f64..2.0, -2.0f64..2.0), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn metric_axioms(k in 1usize..10, a in modes(10), b in modes(10), c in modes(10)) {
        let take = |v: Vec<(i64, f64, f64)>| spectrum(1024, v).filter(|s| s.len() >= k);
        let (Some(a), Some(b), Some(c)) = (take(a), take(b), take(c)) else {
            return Ok(());
        };
        let trim = |s: SparseSpectrum| {
            SparseSpectrum::new(1024, s.modes()[..k].iter().map(|m| (m.frequency.value(), m.coefficient))).unwrap()
        };
        let (a, b, c) = (trim(a), trim(b), trim(c));
        prop_assert_eq!(emd1(&a, &a).unwrap(), 0.0);
        let ab = emd1(&a, &b).unwrap();
        prop_assert!((ab - emd1(&b, &a).unwrap()).abs() < 1e-12);
        prop_assert!(ab <= emd1(&a, &c).unwrap() + emd1(&c, &b).unwrap() + 1e-12);
        if k <= 6 {
            prop_assert!((ab - emd1_brute_force(&a, &b).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn unequal_sizes_are_bounded(ka in 1usize..30, kb in 1usize..30, seed in any::<u64>()) {
        let a = generate_random_signal(ka, 4096, seed).unwrap();
        let b = generate_random_signal(kb, 4096, seed ^ 1).unwrap();
        let d = emd1(&a, &b).unwrap();
        // unit coefficients: each unit of mass costs at most 1 + 2
        prop_assert!((0.0..=3.0).contains(&d));
    }
}

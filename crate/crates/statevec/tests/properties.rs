use proptest::prelude::*;
use statevec::*;

fn split(l: &[u8]) -> (BasisLabel, BasisLabel) {
    (l[..2].to_vec(), l[2..].to_vec())
}

proptest! {
    #[test]
    fn parseval(amps in prop::collection::btree_map(prop::collection::vec(0u8..3, 4), -5.0f64..5.0, 1..30)) {
        prop_assume!(amps.values().any(|a| a.abs() > 1e-3));
        let s = WeightedState::from_numeric(amps.into_iter());
        let sp = schmidt_spectrum(&s, split).unwrap();
        let total: f64 = sp.probabilities().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let p = sp.probabilities();
        prop_assert!(p.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn relabeling_invariance(amps in prop::collection::btree_map(prop::collection::vec(0u8..3, 4), -5.0f64..5.0, 1..30)) {
        prop_assume!(amps.values().any(|a| a.abs() > 1e-3));
        let s = WeightedState::from_numeric(amps.clone().into_iter());
        // A bijection on local symbols, applied per half.
        let perm = |x: u8| (x + 1) % 3;
        let t = WeightedState::from_numeric(amps.into_iter().map(|(l, a)| (l.iter().map(|&x| perm(x)).collect(), a)));
        let a = schmidt_spectrum(&s, split).unwrap().probabilities();
        let b = schmidt_spectrum(&t, split).unwrap().probabilities();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }
}

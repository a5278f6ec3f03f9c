use fredkin1d::*;
use proptest::prelude::*;
use statevec::WeightedState;

fn basis_chain() -> impl Strategy<Value = SpinChain> {
    (1usize..=5, 1u8..=3).prop_flat_map(|(half, s)| {
        let basis = enumerate_ground_basis(2 * half, s).unwrap();
        (0..basis.len()).prop_map(move |i| basis[i].clone())
    })
}

proptest! {
    #[test]
    fn moves_preserve_basis_and_shift_area_by_two(c in basis_chain()) {
        let a = height_profile(&c).area;
        for i in 1..c.len() - 1 {
            for v in [1, 2] {
                if let Some(m) = fredkin_move(&c, i, v) {
                    prop_assert!(is_ground_basis(&m));
                    prop_assert_eq!((height_profile(&m).area - a).abs(), 2);
                    prop_assert_eq!(fredkin_move(&m, i, v), Some(c.clone()));
                }
            }
        }
    }

    #[test]
    fn label_round_trip(c in basis_chain()) {
        prop_assert_eq!(SpinChain::from_label(&c.label(), c.s).unwrap(), c.clone());
        prop_assert_eq!(SpinChain::parse(&c.to_string(), c.s).unwrap(), c);
    }

    #[test]
    fn projector_states_are_orthogonal_to_ground_state(half in 2usize..=4, s in 1u8..=2, qi in 0usize..3) {
        let q = [0.5, 1.0, 2.0][qi];
        let n = 2 * half;
        let gs = ground_state(n, s, q).unwrap();
        let norm = (q.powi(-2) + q.powi(2)).sqrt();
        // ⟨F|GS⟩ for every site, colour triple and both variants, on every basis background.
        for c in enumerate_ground_basis(n, s).unwrap() {
            for i in 1..n - 1 {
                for v in [1, 2] {
                    if let Some(m) = fredkin_move(&c, i, v) {
                        let (hi, lo) = if height_profile(&m).area > height_profile(&c).area { (m, c.clone()) } else { (c.clone(), m) };
                        let f = WeightedState::from_numeric([(hi.label(), q.recip() / norm), (lo.label(), -q / norm)]);
                        prop_assert!(f.inner(&gs).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn network_amplitude_nonzero_iff_ground_basis(bits in prop::collection::vec((any::<bool>(), 1u8..=2), 4)) {
        let spins = bits.iter().map(|&(up, c)| ColoredSpin { up, color: c }).collect();
        let c = SpinChain::new(spins, 2).unwrap();
        let net = build_network(4, 2).unwrap();
        let amp = tensor_core::evaluate_amplitude(&net, &assignment(&c)).unwrap();
        prop_assert_eq!(!amp.is_zero(), is_ground_basis(&c));
        if !amp.is_zero() {
            prop_assert_eq!(amp.exp12, 12 * height_profile(&c).area);
        }
    }
}

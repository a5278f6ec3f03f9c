use fredkin1d::*;
use statevec::schmidt_spectrum;
use tensor_core::{contract_network, QMonomial};

/// Contracted network over open physical legs vs. enumerated basis + areas.
#[test]
fn contracted_state_equals_enumeration() {
    for n in [2, 4, 6, 8] {
        for s in [1u8, 2] {
            let net = build_network(n, s).unwrap();
            let t = contract_network(&net).unwrap();
            let basis = enumerate_ground_basis(n, s).unwrap();
            assert_eq!(t.len(), basis.len(), "N={n} s={s}: off-basis entries present");
            let reference = &basis[0];
            let ref_amp = *t.get(&assignment(reference)).unwrap();
            let ref_area = height_profile(reference).area;
            for c in &basis {
                let amp = t.get(&assignment(c)).copied().unwrap_or_else(QMonomial::zero);
                let expected = QMonomial::q_pow12(12 * (height_profile(c).area - ref_area));
                assert_eq!(amp.ratio(&ref_amp), Some(expected), "N={n} s={s} {c}");
            }
        }
    }
}

#[test]
fn half_chain_spectrum_at_criticality() {
    let gs = ground_state(4, 1, 1.0).unwrap();
    let sp = schmidt_spectrum(&gs, |l| (l[..2].to_vec(), l[2..].to_vec())).unwrap();
    let p = sp.probabilities();
    assert_eq!(p.len(), 2);
    assert!(p.iter().all(|x| (x - 0.5).abs() < 1e-12));
}

/// N=4, s=2 closed form: four Schmidt values q^8/Z from UU|DD and one 4q^4/Z from UD|UD.
#[test]
fn n4_two_colour_spectrum_matches_closed_form() {
    for q in [0.5f64, 1.0, 2.0, 4.0] {
        let gs = ground_state(4, 2, q).unwrap();
        let ee = schmidt_spectrum(&gs, |l| (l[..2].to_vec(), l[2..].to_vec())).unwrap().entropy();
        let z = 4.0 * q.powi(8) + 4.0 * q.powi(4);
        let (a, b) = (q.powi(8) / z, 4.0 * q.powi(4) / z);
        let expected = -4.0 * a * a.ln() - b * b.ln();
        assert!((ee - expected).abs() < 1e-12, "q={q}: {ee} vs {expected}");
    }
}

/// The entropy rises through the critical point; at large q it tends to
/// ln s^{N/2} from above (it overshoots near q≈2).
#[test]
fn entanglement_rises_through_criticality() {
    for n in [6, 8] {
        let ee = |q: f64| {
            let gs = ground_state(n, 2, q).unwrap();
            schmidt_spectrum(&gs, |l| (l[..n / 2].to_vec(), l[n / 2..].to_vec())).unwrap().entropy()
        };
        assert!(ee(0.5) < ee(1.0) && ee(1.0) < ee(2.0));
        let limit = (n as f64 / 2.0) * 2f64.ln();
        assert!(ee(16.0) > limit && ee(16.0) - limit < 1e-3);
    }
}

#[test]
fn fredkin_only_graph_splits_colour_sectors() {
    assert_eq!(fredkin_only_components(6, 1).unwrap(), 1);
    assert!(fredkin_only_components(6, 2).unwrap() > 1);
}

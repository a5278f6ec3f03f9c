use std::collections::BTreeMap;

use fredkin1d::{ColoredSpin, SpinChain};
use lozengemod::*;
use tensor_core::{contract_network, evaluate_amplitude, QMonomial};

fn volume12(d: &TriDomain, t: &LozengeTiling) -> i64 {
    height_field(d, &t.diag).unwrap().volume12()
}

/// Full contraction equals `q^{V}` on the ground basis and vanishes elsewhere.
fn check_full(name: &str, s: u8) {
    let d = TriDomain::named(name).unwrap();
    let pn = build_network(&d, s).unwrap();
    let t = contract_network(&pn.net).unwrap();
    let amps: BTreeMap<Vec<u32>, QMonomial> = t.entries().map(|(k, w)| (k.clone(), *w)).collect();
    let basis = enumerate_ground_basis(&d, s).unwrap();
    assert_eq!(amps.len(), basis.len(), "{name} s={s}: off-basis amplitudes present");
    for c in &basis {
        let a = amps.get(&pn.assignment(c)).expect("basis amplitude missing");
        assert_eq!(*a, QMonomial::q_pow12(volume12(&d, c)), "{name} s={s}");
    }
}

#[test]
fn single_hexagon_contracts_to_enumeration() {
    check_full("hex1", 1);
    check_full("hex1", 2);
}

#[test]
fn three_hexagons_contract_to_enumeration() {
    check_full("hex3", 1);
    check_full("hex3", 2);
}

#[test]
fn six_hexagons_contract_to_enumeration_one_colour() {
    check_full("hex6", 1);
}

#[test]
fn six_hexagons_two_colours_sampled() {
    let d = TriDomain::named("hex6").unwrap();
    let pn = build_network(&d, 2).unwrap();
    let mut checked = 0;
    for diag in ground_tilings(&d).unwrap() {
        let groups = color_groups(&d, &diag).unwrap();
        let n = 2u128.pow(groups.len() as u32);
        for k in (0..n).step_by((n / 64).max(1) as usize) {
            let c = nth_coloring(&d, &diag, &groups, 2, k);
            let a = pn.amplitude(&c).unwrap();
            assert_eq!(a, QMonomial::q_pow12(volume12(&d, &c)));
            if checked % 97 == 0 {
                assert_eq!(evaluate_amplitude(&pn.net, &pn.assignment(&c)).unwrap(), a);
            }
            // break one matched pair: the amplitude must vanish
            let (f, cls) = groups[(k as usize) % groups.len()][0];
            if groups[(k as usize) % groups.len()].len() == 2 {
                let mut bad = c.clone();
                let p = bad.partner(&d, f).unwrap();
                let flip = 3 - bad.colors[f][cls as usize];
                bad.colors[f][cls as usize] = flip;
                bad.colors[p][cls as usize] = flip;
                assert!(pn.amplitude(&bad).unwrap().is_zero());
            }
            checked += 1;
        }
    }
    assert!(checked >= 500);
}

#[test]
fn ancillas_fix_the_absolute_exponent() {
    let d = TriDomain::named("hex3").unwrap();
    let bare = build_network_with(&d, 1, &PRISM_WEIGHTS12, 0).unwrap();
    let full = build_network(&d, 1).unwrap();
    for diag in ground_tilings(&d).unwrap() {
        let c = LozengeTiling::uncolored(diag);
        let a = evaluate_amplitude(&bare.net, &bare.assignment(&c)).unwrap();
        let b = evaluate_amplitude(&full.net, &full.assignment(&c)).unwrap();
        // three degree-4 boundary vertices, two walls each
        assert_eq!(a, QMonomial::q_pow12(volume12(&d, &c) + 6));
        assert_eq!(b, QMonomial::q_pow12(volume12(&d, &c)));
    }
}

/// Independent oracle: every tiling with non-negative heights, every colouring
/// of its (lozenge, line) slots, kept when each line reads as a coloured Dyck chain.
fn brute_force(d: &TriDomain, s: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for diag in tilings(d).unwrap() {
        let Ok(hf) = height_field(d, &diag) else { continue };
        if hf.min() < 0 {
            continue;
        }
        let base = LozengeTiling::uncolored(diag.clone());
        let slots: Vec<(usize, u8)> = base
            .lozenges(d)
            .into_iter()
            .flat_map(|(a, _)| {
                let m = diag[a];
                (0..3u8).filter(move |&k| k != m).map(move |k| (a, k))
            })
            .collect();
        let trs = tracks(d, &diag, &hf).unwrap();
        let total = (s as u64).pow(slots.len() as u32);
        for code in 0..total {
            let mut t = base.clone();
            let mut x = code;
            for &(a, k) in &slots {
                let c = (x % s as u64) as u8 + 1;
                x /= s as u64;
                let p = t.partner(d, a).unwrap();
                t.colors[a][k as usize] = c;
                t.colors[p][k as usize] = c;
            }
            let ok = trs.iter().all(|tr| {
                let spins = tr
                    .lozenges
                    .iter()
                    .enumerate()
                    .map(|(i, &(f, _))| {
                        let c = t.colors[f][tr.class as usize];
                        if tr.heights[i + 1] > tr.heights[i] { ColoredSpin::up(c) } else { ColoredSpin::down(c) }
                    })
                    .collect();
                fredkin1d::is_ground_basis(&SpinChain { spins, s })
            });
            if ok {
                out.push(t.label(s));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for (name, s) in [("hex1", 1), ("hex1", 2), ("hex3", 1), ("hex3", 2), ("hex6", 1)] {
        let d = TriDomain::named(name).unwrap();
        let mut ours: Vec<Vec<u8>> = enumerate_ground_basis(&d, s).unwrap().iter().map(|c| c.label(s)).collect();
        ours.sort();
        assert_eq!(ours, brute_force(&d, s), "{name} s={s}");
    }
}

#[test]
fn canonical_counts() {
    let d6 = TriDomain::named("hex6").unwrap();
    assert_eq!(tilings(&d6).unwrap().len(), 104);
    let mut v: Vec<i64> = ground_tilings(&d6)
        .unwrap()
        .iter()
        .map(|t| height_field(&d6, t).unwrap().iter().map(|(_, h)| h).sum())
        .collect();
    v.sort();
    assert_eq!(v, [22, 25, 25, 25, 28, 28, 28, 31, 34]);
    assert_eq!(enumerate_ground_basis(&TriDomain::named("hex3").unwrap(), 2).unwrap().len(), 1024);
    assert!(matches!(enumerate_ground_basis(&d6, 2), Err(LozengeError::TooLarge(_))));
}

#[test]
fn annihilation_three_hexagons_two_colours() {
    let d = TriDomain::named("hex3").unwrap();
    for q in [0.5, 2.0] {
        let rep = verify_annihilation(&d, 2, q).unwrap();
        assert!(rep.max_residual < 1e-12, "{rep:?}");
    }
}

#[test]
fn annihilation_six_hexagons_one_colour() {
    let d = TriDomain::named("hex6").unwrap();
    for q in [0.5, 1.0, 2.0] {
        let rep = verify_annihilation(&d, 1, q).unwrap();
        assert!(rep.max_residual < 1e-12, "{rep:?}");
    }
}

#[test]
fn wrong_weights_are_detected() {
    // q^{-V} instead of q^{V}: the move terms no longer vanish
    let d = TriDomain::named("hex3").unwrap();
    let terms = ground_state_exact(&d, 1).unwrap();
    let flipped = terms.iter().map(|(l, m)| (l.clone(), QMonomial::q_pow12(-m.exp12)));
    let gs = statevec::WeightedState::from_exact(2.0, flipped).normalize().unwrap();
    let rep = verify_state(&d, &gs, 1, 2.0);
    assert_eq!(rep.worst_term, "HS");
    assert!(rep.max_residual > 0.1);
}

#[test]
fn bijection_round_trips() {
    for (name, s, step) in [("hex1", 2, 1), ("hex3", 1, 1), ("hex3", 2, 7), ("hex6", 1, 1)] {
        let d = TriDomain::named(name).unwrap();
        let pn = build_network(&d, s).unwrap();
        for c in enumerate_ground_basis(&d, s).unwrap().iter().step_by(step) {
            let t = tiling_from_config(&pn, c).unwrap();
            assert_eq!(&config_from_tiling(&pn, &t).unwrap(), c);
            let hf = height_field(&d, &c.diag).unwrap();
            for (i, &(_, n3, n4)) in tower_counts(&pn, &t).iter().enumerate() {
                assert_eq!(n3, 1);
                assert_eq!(n4 as i64, hf.spin_height(&d, i));
            }
            let hexes: usize = four_arrow_hexagons(&pn, &t).unwrap().iter().map(|(_, h)| h.len()).sum();
            let n4: usize = tower_counts(&pn, &t).iter().map(|x| x.2).sum();
            assert_eq!(6 * hexes, n4);
        }
    }
}

#[test]
fn broken_tiling_is_rejected() {
    let d = TriDomain::named("hex3").unwrap();
    let pn = build_network(&d, 1).unwrap();
    let c = &enumerate_ground_basis(&d, 1).unwrap()[0];
    let mut t = tiling_from_config(&pn, c).unwrap();
    let (k, tile) = t.tiles.iter().find(|(_, t)| t.index == 4).map(|(k, t)| (*k, t.clone())).unwrap();
    t.tiles.insert(k, PrismTileId { index: 1, ..tile });
    assert!(matches!(config_from_tiling(&pn, &t), Err(LozengeError::Discontinuity(_))));
}

#[test]
fn move_graph_connected() {
    let d3 = TriDomain::named("hex3").unwrap();
    assert_eq!(move_graph_components(&d3, 1).unwrap(), 1);
    assert_eq!(move_graph_components(&d3, 2).unwrap(), 1);
    assert_eq!(move_graph_components(&TriDomain::named("hex6").unwrap(), 1).unwrap(), 1);
}

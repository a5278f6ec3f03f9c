use std::collections::BTreeMap;

use fredkin1d::ColoredSpin;
use sixvertex::*;
use tensor_core::{contract_network, QMonomial};

/// Contracted amplitudes keyed by configuration label.
fn contracted(l: usize, s: u8) -> BTreeMap<Vec<u8>, QMonomial> {
    let cn = build_network(l, s).unwrap();
    let t = contract_network(&cn.net).unwrap();
    let alpha = leg_alphabet(s);
    let sites: Vec<Site> = SixVertexConfig::sites(l).collect();
    let mut out = BTreeMap::new();
    for (key, w) in t.entries() {
        let mut label = Vec::new();
        for (site, &sym) in sites.iter().zip(key) {
            let lab = alpha.label(sym).unwrap();
            let comp = lab.0[if site.kind == Kind::H { 0 } else { 1 }];
            match comp {
                tensor_core::Component::Arrow { n, color } if n.abs() == 2 => {
                    label.push(ColoredSpin { up: n > 0, color }.code())
                }
                _ => panic!("non-spin value on a physical leg"),
            }
        }
        out.insert(label, *w);
    }
    out
}

fn check(l: usize, s: u8) {
    let basis = enumerate_ground_basis(l, s).unwrap();
    let amps = contracted(l, s);
    assert_eq!(amps.len(), basis.len(), "off-basis amplitudes present");
    let reference = &basis[0];
    let a0 = amps[&reference.label()];
    let v0 = volume(reference).unwrap();
    for c in &basis {
        let a = amps.get(&c.label()).expect("basis amplitude missing");
        let dv = volume(c).unwrap() - v0;
        assert_eq!(a.ratio(&a0), Some(QMonomial::q_pow12(12 * dv)), "{c:?}");
        for q in [0.5, 1.0, 2.0] {
            assert!((a.eval(q) / a0.eval(q) - q.powi(dv as i32)).abs() < 1e-12);
        }
    }
}

#[test]
fn l2_contracts_to_enumeration() {
    check(2, 1);
    check(2, 2);
}

#[test]
fn l4_contracts_to_enumeration_one_colour() {
    check(4, 1);
}

#[test]
fn l4_contracts_to_enumeration_two_colours() {
    check(4, 2);
}

/// Independent oracle: product of valid chain restrictions, filtered by the ice rule.
fn brute_force(l: usize, s: u8) -> Vec<Vec<u8>> {
    let n = l * (l - 1);
    let chain_options = |j: usize| -> Vec<Vec<ColoredSpin>> {
        let mut out = Vec::new();
        for bits in 0..(1u32 << l) {
            let ups: Vec<bool> = (0..l).map(|i| bits >> i & 1 == 1).collect();
            if !ups[0] || ups[l - 1] {
                continue;
            }
            if (j == 0 || j == l - 2) && (0..l).any(|i| ups[i] != (i % 2 == 0)) {
                continue;
            }
            // every colouring, filtered by the 1D rule with virtual ends
            let mut cols: Vec<Vec<u8>> = vec![vec![]];
            for _ in 0..l {
                cols = cols.into_iter().flat_map(|p| (1..=s).map(move |c| [p.clone(), vec![c]].concat())).collect();
            }
            for cs in cols {
                let spins: Vec<ColoredSpin> = (0..l).map(|i| ColoredSpin { up: ups[i], color: cs[i] }).collect();
                let mut ext = spins.clone();
                if j % 2 == 0 {
                    ext.insert(0, ColoredSpin::up(1));
                    ext.push(ColoredSpin::down(1));
                }
                if fredkin1d::is_ground_basis(&fredkin1d::SpinChain { spins: ext, s }) {
                    out.push(spins);
                }
            }
        }
        out
    };
    let opts: Vec<Vec<Vec<ColoredSpin>>> = (0..l - 1).map(chain_options).collect();
    // rows then columns
    let mut rows: Vec<Vec<Vec<ColoredSpin>>> = vec![vec![]];
    for o in &opts {
        rows = rows.into_iter().flat_map(|p| o.iter().map(move |c| [p.clone(), vec![c.clone()]].concat())).collect();
    }
    let cols = rows.clone();
    let mut out = Vec::new();
    for r in &rows {
        for c in &cols {
            let mut h = vec![ColoredSpin::up(1); n];
            let mut v = vec![ColoredSpin::up(1); n];
            for (y, chain) in r.iter().enumerate() {
                for (x, sp) in chain.iter().enumerate() {
                    h[x * (l - 1) + y] = *sp;
                }
            }
            for (x, chain) in c.iter().enumerate() {
                for (y, sp) in chain.iter().enumerate() {
                    v[x * l + y] = *sp;
                }
            }
            let cfg = SixVertexConfig::new(l, s, h, v).unwrap();
            if ice_rule_ok(&cfg) && height_field(&cfg).unwrap().min_interior() >= 0 {
                out.push(cfg.label());
            }
        }
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for (l, s) in [(2, 1), (2, 2), (4, 1), (4, 2)] {
        let ours: Vec<Vec<u8>> = enumerate_ground_basis(l, s).unwrap().iter().map(|c| c.label()).collect();
        assert_eq!(ours, brute_force(l, s), "L={l} s={s}");
    }
}

#[test]
fn l4_counts_and_volumes() {
    assert_eq!(enumerate_ground_basis(4, 1).unwrap().len(), 2);
    let b2 = enumerate_ground_basis(4, 2).unwrap();
    assert_eq!(b2.len(), 8192);
    let expected: usize = enumerate_surfaces(4)
        .unwrap()
        .iter()
        .map(|c| 2usize.pow(physical_pairs(c).len() as u32))
        .sum();
    assert_eq!(b2.len(), expected);
    let hist = volume_histogram(&enumerate_surfaces(4).unwrap());
    // two surfaces, centre height 0 or 2
    assert_eq!(hist.len(), 2);
    let (lo, hi) = (*hist.keys().next().unwrap(), *hist.keys().last().unwrap());
    assert_eq!(hi - lo, 2);
}

#[test]
fn l6_surfaces_obey_every_rule() {
    let b = enumerate_surfaces(6).unwrap();
    assert!(b.len() > 2);
    assert!(b.iter().all(is_ground_basis));
    let max = b.iter().map(|c| volume(c).unwrap()).max().unwrap();
    assert_eq!(b.iter().filter(|c| volume(c).unwrap() == max).count(), 1);
}

#[test]
fn annihilation_l4_two_colours() {
    for q in [0.5, 2.0] {
        let rep = verify_annihilation(4, 2, q).unwrap();
        assert!(rep.max_residual < 1e-12, "{rep:?}");
        assert!(rep.boundary_expectation.abs() < 1e-12);
        assert!(rep.terms_checked > 40);
    }
}

#[test]
fn bijection_round_trips_l4() {
    for s in [1, 2] {
        let cn = build_network(4, s).unwrap();
        for c in enumerate_ground_basis(4, s).unwrap().iter().step_by(if s == 1 { 1 } else { 7 }) {
            let t = tiling_from_config(&cn, c).unwrap();
            assert_eq!(&config_from_tiling(&cn, &t).unwrap(), c);
            let f = height_field(c).unwrap();
            for site in SixVertexConfig::sites(4) {
                let turn = 2 - f.spin_height(site) as usize;
                assert!(matches!(t.tiles[&(site, turn)].index, 2 | 4));
            }
        }
    }
}

#[test]
fn broken_tiling_is_rejected() {
    let cn = build_network(4, 1).unwrap();
    let c = &enumerate_ground_basis(4, 1).unwrap()[0];
    let mut t = tiling_from_config(&cn, c).unwrap();
    let (k, tile) = t.tiles.iter().find(|(_, t)| t.index == 3).map(|(k, t)| (*k, t.clone())).unwrap();
    t.tiles.insert(k, TileId { index: 1, ..tile });
    assert!(matches!(config_from_tiling(&cn, &t), Err(SixVertexError::Discontinuity(_))));
}

#[test]
fn move_graph_connected() {
    assert_eq!(move_graph_components(4, 1).unwrap(), 1);
    assert_eq!(move_graph_components(4, 2).unwrap(), 1);
    // Controls must be physical spins: at L=6 a peak inside a flat U D U D
    // stretch of a raised interior chain can never be lowered.
    assert_eq!(move_graph_components(6, 1).unwrap(), 2);
}

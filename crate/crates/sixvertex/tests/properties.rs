use fredkin1d::ColoredSpin;
use proptest::prelude::*;
use sixvertex::*;
use std::sync::OnceLock;

fn basis() -> &'static Vec<SixVertexConfig> {
    static B: OnceLock<Vec<SixVertexConfig>> = OnceLock::new();
    B.get_or_init(|| enumerate_ground_basis(4, 2).unwrap())
}

fn network() -> &'static CubeNetwork {
    static N: OnceLock<CubeNetwork> = OnceLock::new();
    N.get_or_init(|| build_network(4, 2).unwrap())
}

proptest! {
    #[test]
    fn height_integration_defined_iff_ice(bits in proptest::collection::vec(any::<bool>(), 24)) {
        let sp = |b: bool| if b { ColoredSpin::up(1) } else { ColoredSpin::down(1) };
        let h = bits[..12].iter().map(|&b| sp(b)).collect();
        let v = bits[12..].iter().map(|&b| sp(b)).collect();
        let c = SixVertexConfig::new(4, 1, h, v).unwrap();
        prop_assert_eq!(height_field(&c).is_ok(), ice_rule_ok(&c));
    }

    #[test]
    fn chains_are_coloured_dyck_walks(k in 0usize..8192) {
        let c = &basis()[k];
        for kind in [Kind::H, Kind::V] {
            for j in 0..3 {
                let chain = fredkin1d::SpinChain { spins: c.extended_chain(kind, j), s: 2 };
                prop_assert!(fredkin1d::is_ground_basis(&chain));
            }
        }
    }

    #[test]
    fn tiling_round_trip(k in 0usize..8192) {
        let c = &basis()[k];
        let t = tiling_from_config(network(), c).unwrap();
        prop_assert_eq!(&config_from_tiling(network(), &t).unwrap(), c);
    }

    #[test]
    fn label_and_json_round_trip(k in 0usize..8192) {
        let c = &basis()[k];
        prop_assert_eq!(&SixVertexConfig::from_label(4, 2, &c.label()).unwrap(), c);
        prop_assert_eq!(&SixVertexConfig::from_json(&c.to_json()).unwrap(), c);
    }
}

#[test]
fn moves_change_volume_by_two_everywhere() {
    let mut applied = 0;
    for c in basis() {
        let v = volume(c).unwrap();
        for x in 1..3 {
            for y in 1..3 {
                for j in 1..=4 {
                    if let Some(m) = fredkin_move_2d(c, x, y, j) {
                        applied += 1;
                        assert!(ice_rule_ok(&m));
                        assert!(is_ground_basis(&m));
                        assert_eq!((volume(&m).unwrap() - v).abs(), 2);
                    }
                }
            }
        }
    }
    assert!(applied > 0);
}

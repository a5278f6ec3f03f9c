//! Cube-tile network: towers of `H`/`V` tiles over every spin.
//!
//! Leg order of every tile: `[k1 bottom, k2 SE, k3 SW, k4 NW, k5 NE, k6 top]`.
//! Labels are `(dashed, solid)`; the dashed family follows the rows, the
//! solid family the columns.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use fredkin1d::ColoredSpin;
use tensor_core::{
    enumerate_terms, Component, Label, Leg, LegAlphabet, LegRef, LegRole, NetworkGraph, QMonomial, SparseTensor,
};

use crate::{check_size, chain_raised, enumerate_surfaces, height_field, Kind, Site, SixVertexConfig, SixVertexError};

/// Weights of `X₁ … X₅` in twelfths of a power of q.
pub const TILE_WEIGHTS12: [i64; 5] = [0, 3, 6, 3, 0];

/// One tile: sublattice, index 1..=5 and its colour parameters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TileId {
    pub kind: Kind,
    pub index: u8,
    pub colors: Vec<u8>,
}

impl std::fmt::Display for TileId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = if self.kind == Kind::H { 'H' } else { 'V' };
        let cs: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        write!(f, "{k}{}[{}]", self.index, cs.join(","))
    }
}

pub fn leg_alphabet(s: u8) -> Arc<LegAlphabet> {
    let fam: Vec<Component> = std::iter::once(Component::Zero)
        .chain((1..=s).flat_map(|c| [1i8, 2, -2].map(|n| Component::Arrow { n, color: c })))
        .collect();
    Arc::new(LegAlphabet::product(&[fam.clone(), fam]).expect("distinct labels"))
}

fn arrow(n: i8, c: u8) -> Component {
    Component::Arrow { n, color: c }
}

/// The six leg labels of a tile.
pub fn tile_legs(t: &TileId) -> [Label; 6] {
    let z = Component::Zero;
    let l = |a: Component, b: Component| Label(vec![a, b]);
    let zero = l(z, z);
    let c = |i: usize| t.colors.get(i).copied().unwrap_or(1);
    let mut k: [Label; 6] = std::array::from_fn(|_| zero.clone());
    match (t.kind, t.index) {
        (Kind::H, 1) => (k[0], k[5]) = (l(arrow(2, c(0)), z), l(arrow(2, c(0)), z)),
        (Kind::H, 2) => {
            k[0] = l(arrow(2, c(0)), z);
            (k[1], k[4]) = (l(arrow(1, c(0)), arrow(1, c(1))), l(arrow(1, c(0)), arrow(1, c(1))));
        }
        (Kind::H, 3) => {
            (k[1], k[4]) = (l(arrow(1, c(0)), arrow(1, c(1))), l(arrow(1, c(0)), arrow(1, c(1))));
            (k[2], k[3]) = (l(arrow(1, c(0)), arrow(1, c(2))), l(arrow(1, c(0)), arrow(1, c(2))));
        }
        (Kind::H, 4) => {
            k[0] = l(arrow(-2, c(0)), z);
            (k[2], k[3]) = (l(arrow(1, c(0)), arrow(1, c(1))), l(arrow(1, c(0)), arrow(1, c(1))));
        }
        (Kind::H, _) => (k[0], k[5]) = (l(arrow(-2, c(0)), z), l(arrow(-2, c(0)), z)),
        (Kind::V, 1) => (k[0], k[5]) = (l(z, arrow(2, c(0))), l(z, arrow(2, c(0)))),
        (Kind::V, 2) => {
            k[0] = l(z, arrow(2, c(0)));
            (k[3], k[4]) = (l(arrow(1, c(1)), arrow(1, c(0))), l(arrow(1, c(1)), arrow(1, c(0))));
        }
        (Kind::V, 3) => {
            (k[1], k[2]) = (l(arrow(1, c(1)), arrow(1, c(0))), l(arrow(1, c(1)), arrow(1, c(0))));
            (k[3], k[4]) = (l(arrow(1, c(2)), arrow(1, c(0))), l(arrow(1, c(2)), arrow(1, c(0))));
        }
        (Kind::V, 4) => {
            k[0] = l(z, arrow(-2, c(0)));
            (k[1], k[2]) = (l(arrow(1, c(1)), arrow(1, c(0))), l(arrow(1, c(1)), arrow(1, c(0))));
        }
        (Kind::V, _) => (k[0], k[5]) = (l(z, arrow(-2, c(0))), l(z, arrow(-2, c(0)))),
    }
    k
}

/// Number of colour parameters of tile `index`.
pub fn tile_arity(index: u8) -> usize {
    match index {
        1 | 5 => 1,
        2 | 4 => 2,
        _ => 3,
    }
}

/// Every tile of one sublattice for `s` colours.
pub fn all_tiles(kind: Kind, s: u8) -> Vec<TileId> {
    let mut out = Vec::new();
    for index in 1..=5u8 {
        let mut combos: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..tile_arity(index) {
            combos = combos.into_iter().flat_map(|p| (1..=s).map(move |c| [p.clone(), vec![c]].concat())).collect();
        }
        out.extend(combos.into_iter().map(|colors| TileId { kind, index, colors }));
    }
    out
}

/// The six-leg tile tensor of one sublattice, plus its entry → tile map.
pub fn tile_tensor(kind: Kind, s: u8) -> (SparseTensor, HashMap<Vec<u32>, TileId>) {
    tile_tensor_weighted(kind, s, &TILE_WEIGHTS12)
}

pub fn tile_tensor_weighted(kind: Kind, s: u8, weights12: &[i64; 5]) -> (SparseTensor, HashMap<Vec<u32>, TileId>) {
    let a = leg_alphabet(s);
    let legs = ["k1", "k2", "k3", "k4", "k5", "k6"].iter().map(|n| Leg::new(*n, a.clone())).collect();
    let mut t = SparseTensor::new(legs);
    let mut ids = HashMap::new();
    for tile in all_tiles(kind, s) {
        let key: Vec<u32> = tile_legs(&tile).iter().map(|lab| a.symbol(lab).expect("label in alphabet")).collect();
        t.insert(key.clone(), QMonomial::q_pow12(weights12[tile.index as usize - 1])).expect("distinct entries");
        ids.insert(key, tile);
    }
    (t, ids)
}

/// Physical symbol of a spin on its tower's bottom leg.
pub fn spin_symbol(alpha: &LegAlphabet, kind: Kind, sp: ColoredSpin) -> u32 {
    let a = arrow(if sp.up { 2 } else { -2 }, sp.color);
    let lab = match kind {
        Kind::H => Label(vec![a, Component::Zero]),
        Kind::V => Label(vec![Component::Zero, a]),
    };
    alpha.symbol(&lab).expect("colour in range")
}

/// Neighbour across wall `w ∈ 1..=4` (leg k2..k5) and the leg it meets there.
pub fn wall_neighbour(l: usize, site: Site, w: usize) -> Option<(Site, usize)> {
    let (x, y) = (site.x as i64, site.y as i64);
    let (kind, nx, ny, leg) = match (site.kind, w) {
        (Kind::H, 1) => (Kind::V, x, y, 3),
        (Kind::H, 4) => (Kind::V, x, y + 1, 2),
        (Kind::H, 2) => (Kind::V, x - 1, y, 4),
        (Kind::H, 3) => (Kind::V, x - 1, y + 1, 1),
        (Kind::V, 3) => (Kind::H, x, y, 1),
        (Kind::V, 2) => (Kind::H, x, y - 1, 4),
        (Kind::V, 4) => (Kind::H, x + 1, y, 2),
        (Kind::V, 1) => (Kind::H, x + 1, y - 1, 3),
        _ => return None,
    };
    let li = l as i64;
    let (mx, my) = if kind == Kind::H { (li, li - 1) } else { (li - 1, li) };
    (nx >= 0 && ny >= 0 && nx < mx && ny < my).then(|| (Site { kind, x: nx as usize, y: ny as usize }, leg))
}

/// First or last spin of a raised chain.
pub fn is_pruned_end(l: usize, site: Site) -> bool {
    let (j, pos) = site.chain_pos();
    chain_raised(j) && (pos == 0 || pos == l - 1)
}

/// The built network with its geometry.
#[derive(Clone, Debug)]
pub struct CubeNetwork {
    pub l: usize,
    pub s: u8,
    pub net: NetworkGraph,
    /// `(site, level) → node`.
    pub tiles: BTreeMap<(Site, usize), usize>,
    /// Level range of every tower.
    pub towers: BTreeMap<Site, (usize, usize)>,
    h_ids: HashMap<Vec<u32>, TileId>,
    v_ids: HashMap<Vec<u32>, TileId>,
}

/// Level ranges: lowest turn level over the basis up to `L/2`; pruned ends keep only their turn level.
pub fn tower_ranges(l: usize) -> Result<BTreeMap<Site, (usize, usize)>, SixVertexError> {
    let top = (l / 2) as i64;
    let mut range: BTreeMap<Site, (i64, i64)> = BTreeMap::new();
    for c in enumerate_surfaces(l)? {
        let f = height_field(&c)?;
        for site in SixVertexConfig::sites(l) {
            let turn = top - f.spin_height(site);
            let e = range.entry(site).or_insert((turn, turn));
            e.0 = e.0.min(turn);
            e.1 = e.1.max(turn);
        }
    }
    let mut out = BTreeMap::new();
    for (site, (lo, hi)) in range {
        if lo < 0 {
            return Err(SixVertexError::Shape(format!("negative turn level at {site:?}")));
        }
        let hi = if is_pruned_end(l, site) { hi } else { top };
        out.insert(site, (lo as usize, hi as usize));
    }
    Ok(out)
}

pub fn build_network(l: usize, s: u8) -> Result<CubeNetwork, SixVertexError> {
    build_network_weighted(l, s, &TILE_WEIGHTS12)
}

/// Network with custom tile weights (used by negative controls).
pub fn build_network_weighted(l: usize, s: u8, weights12: &[i64; 5]) -> Result<CubeNetwork, SixVertexError> {
    check_size(l, s)?;
    let alpha = leg_alphabet(s);
    let (ht, h_ids) = tile_tensor_weighted(Kind::H, s, weights12);
    let (vt, v_ids) = tile_tensor_weighted(Kind::V, s, weights12);
    let (ht, vt) = (Arc::new(ht), Arc::new(vt));
    let cap = |lab: Label| {
        let sym = alpha.symbol(&lab).expect("cap label");
        Arc::new(SparseTensor::delta(Leg::new("cap", alpha.clone()), sym, QMonomial::one()).unwrap())
    };
    let zero = cap(Label::zero(2));
    let virt = cap(Label(vec![arrow(1, 1), arrow(1, 1)]));
    let top = l / 2;
    let towers = tower_ranges(l)?;
    let mut net = NetworkGraph::new();
    let mut tiles = BTreeMap::new();
    for (&site, &(lo, hi)) in &towers {
        for lev in lo..=hi {
            let t = if site.kind == Kind::H { ht.clone() } else { vt.clone() };
            let k = if site.kind == Kind::H { 'H' } else { 'V' };
            tiles.insert((site, lev), net.add_node(t, format!("{k}({},{})@{lev}", site.x, site.y)));
        }
    }
    for site in SixVertexConfig::sites(l) {
        let (lo, hi) = towers[&site];
        for lev in lo..=hi {
            let id = tiles[&(site, lev)];
            if lev == lo {
                net.open_leg(LegRef::new(id, 0), LegRole::Physical);
            }
            if lev == hi {
                net.cap(LegRef::new(id, 5), zero.clone(), "top");
            } else {
                net.connect(LegRef::new(id, 5), LegRef::new(tiles[&(site, lev + 1)], 0));
            }
            for w in 1..=4 {
                let nb = wall_neighbour(l, site, w);
                match nb.and_then(|(n, leg)| tiles.get(&(n, lev)).map(|&nid| (nid, leg))) {
                    Some((nid, leg)) => {
                        if site.kind == Kind::H {
                            net.connect(LegRef::new(id, w), LegRef::new(nid, leg));
                        }
                    }
                    None => {
                        let arrowed = lev == top && nb.is_some_and(|(n, _)| is_pruned_end(l, n));
                        net.cap(LegRef::new(id, w), if arrowed { virt.clone() } else { zero.clone() }, "wall");
                    }
                }
            }
        }
    }
    net.validate()?;
    Ok(CubeNetwork { l, s, net, tiles, towers, h_ids, v_ids })
}

impl CubeNetwork {
    /// Physical assignment (label order) for a configuration.
    pub fn assignment(&self, c: &SixVertexConfig) -> Vec<u32> {
        let a = leg_alphabet(self.s);
        SixVertexConfig::sites(self.l).map(|site| spin_symbol(&a, site.kind, c.get(site))).collect()
    }

    /// Arrowed wall caps `(site, leg)` at the top level.
    pub fn arrow_caps(&self) -> Vec<(Site, usize)> {
        let mut out = Vec::new();
        for (&(site, lev), _) in &self.tiles {
            for w in 1..=4 {
                if let Some((n, _)) = wall_neighbour(self.l, site, w) {
                    if lev == self.l / 2 && !self.tiles.contains_key(&(n, lev)) && is_pruned_end(self.l, n) {
                        out.push((site, w));
                    }
                }
            }
        }
        out
    }

    pub fn tile_of(&self, kind: Kind, key: &[u32]) -> Option<&TileId> {
        match kind {
            Kind::H => self.h_ids.get(key),
            Kind::V => self.v_ids.get(key),
        }
    }
}

/// A tiling: the tile chosen at every `(site, level)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubeTiling {
    pub l: usize,
    pub s: u8,
    pub tiles: BTreeMap<(Site, usize), TileId>,
}

/// The unique tiling of a ground-basis configuration.
pub fn tiling_from_config(cn: &CubeNetwork, c: &SixVertexConfig) -> Result<CubeTiling, SixVertexError> {
    let terms = enumerate_terms(&cn.net, &cn.assignment(c), 2)?;
    if terms.len() != 1 {
        return Err(SixVertexError::TilingCount(terms.len()));
    }
    let chosen = &terms[0];
    let mut tiles = BTreeMap::new();
    for (&(site, lev), &id) in &cn.tiles {
        let t = cn.tile_of(site.kind, &chosen[id]).ok_or(SixVertexError::Shape("unknown tile entry".into()))?;
        tiles.insert((site, lev), t.clone());
    }
    let tiling = CubeTiling { l: cn.l, s: cn.s, tiles };
    check_continuity(cn, &tiling)?;
    Ok(tiling)
}

/// Checks face matching across every edge and cap of the network geometry.
pub fn check_continuity(cn: &CubeNetwork, t: &CubeTiling) -> Result<(), SixVertexError> {
    let alpha = leg_alphabet(cn.s);
    let mut value: HashMap<LegRef, u32> = HashMap::new();
    for (&(site, lev), &id) in &cn.tiles {
        let tile = t.tiles.get(&(site, lev)).ok_or(SixVertexError::Discontinuity(format!("no tile at {site:?}@{lev}")))?;
        if tile.kind != site.kind {
            return Err(SixVertexError::Discontinuity(format!("wrong sublattice at {site:?}@{lev}")));
        }
        for (k, lab) in tile_legs(tile).iter().enumerate() {
            value.insert(LegRef::new(id, k), alpha.symbol(lab).expect("tile label"));
        }
    }
    for (a, b) in cn.net.edges() {
        let get = |r: &LegRef| -> Option<u32> {
            value.get(r).copied().or_else(|| {
                // cap node: its single entry
                let nd = &cn.net.nodes()[r.node];
                (nd.tensor.rank() == 1).then(|| nd.tensor.entries().next().map(|(k, _)| k[0])).flatten()
            })
        };
        if get(a) != get(b) {
            let name = |r: &LegRef| cn.net.nodes()[r.node].tag.clone();
            return Err(SixVertexError::Discontinuity(format!("{}.k{} ≠ {}.k{}", name(a), a.leg + 1, name(b), b.leg + 1)));
        }
    }
    Ok(())
}

/// Reads the spins off the bottom tiles, after checking the tiling.
pub fn config_from_tiling(cn: &CubeNetwork, t: &CubeTiling) -> Result<SixVertexConfig, SixVertexError> {
    check_continuity(cn, t)?;
    let mut h = Vec::new();
    let mut v = Vec::new();
    for site in SixVertexConfig::sites(cn.l) {
        let (lo, hi) = cn.towers[&site];
        let turns = (lo..=hi).filter(|&lev| matches!(t.tiles[&(site, lev)].index, 2 | 4)).count();
        if turns != 1 {
            return Err(SixVertexError::Discontinuity(format!("{turns} turning tiles over {site:?}")));
        }
        let bottom = &t.tiles[&(site, lo)];
        let sp = match bottom.index {
            1 | 2 => ColoredSpin::up(bottom.colors[0]),
            4 | 5 => ColoredSpin::down(bottom.colors[0]),
            _ => return Err(SixVertexError::Discontinuity(format!("no arrow enters {site:?}"))),
        };
        if site.kind == Kind::H { h.push(sp) } else { v.push(sp) }
    }
    SixVertexConfig::new(cn.l, cn.s, h, v)
}

/// One of the 16 spin patterns around a vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexPattern {
    /// Up/down of the spins below, above, left and right of the vertex.
    pub spins: [bool; 4],
    pub ice: bool,
    pub tileable: bool,
    /// Shared walls whose removal alone makes the pattern tileable.
    pub discontinuities: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurjectivityReport {
    pub patterns: Vec<VertexPattern>,
}

impl SurjectivityReport {
    pub fn tileable(&self) -> usize {
        self.patterns.iter().filter(|p| p.tileable).count()
    }
}

const LOCAL_LEVELS: usize = 4;

/// Four towers around one vertex; outer walls left free.
fn local_network(skip: Option<usize>) -> (NetworkGraph, Vec<Kind>) {
    let alpha = leg_alphabet(1);
    let (ht, _) = tile_tensor(Kind::H, 1);
    let (vt, _) = tile_tensor(Kind::V, 1);
    let (ht, vt) = (Arc::new(ht), Arc::new(vt));
    let zero = Arc::new(SparseTensor::delta(Leg::new("cap", alpha), 0, QMonomial::one()).unwrap());
    // S = H(x,y−1), N = H(x,y), W = V(x−1,y), E = V(x,y)
    let kinds = vec![Kind::H, Kind::H, Kind::V, Kind::V];
    // (tower a, leg a, tower b, leg b)
    let shared = [(1, 1, 3, 3), (1, 2, 2, 4), (0, 4, 3, 2), (0, 3, 2, 1)];
    let mut net = NetworkGraph::new();
    let ids: Vec<Vec<usize>> = kinds
        .iter()
        .map(|k| (0..LOCAL_LEVELS).map(|_| net.add_node(if *k == Kind::H { ht.clone() } else { vt.clone() }, "t")).collect())
        .collect();
    for (t, col) in ids.iter().enumerate() {
        net.open_leg(LegRef::new(col[0], 0), LegRole::Physical);
        for lev in 0..LOCAL_LEVELS {
            if lev + 1 < LOCAL_LEVELS {
                net.connect(LegRef::new(col[lev], 5), LegRef::new(col[lev + 1], 0));
            } else {
                net.cap(LegRef::new(col[lev], 5), zero.clone(), "top");
            }
            for w in 1..=4 {
                let pair = shared.iter().enumerate().find(|(_, &(a, la, b, lb))| (a == t && la == w) || (b == t && lb == w));
                match pair {
                    Some((e, &(a, la, b, lb))) if Some(e) != skip => {
                        if a == t {
                            net.connect(LegRef::new(ids[a][lev], la), LegRef::new(ids[b][lev], lb));
                        }
                    }
                    _ => net.open_leg(LegRef::new(col[lev], w), LegRole::Boundary),
                }
            }
        }
    }
    (net, kinds)
}

const WALL_NAMES: [&str; 4] = ["N|E", "N|W", "S|E", "S|W"];

/// Tries to assemble tiles around a vertex for each of the 16 spin patterns.
pub fn local_surjectivity_report() -> SurjectivityReport {
    let alpha = leg_alphabet(1);
    let mut patterns = Vec::new();
    for bits in 0..16u8 {
        let spins = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0];
        let sgn = |u: bool| if u { 1 } else { -1 };
        // Sʰ below − Sʰ above − Sᵛ left + Sᵛ right
        let ice = sgn(spins[0]) - sgn(spins[1]) - sgn(spins[2]) + sgn(spins[3]) == 0;
        let try_net = |skip| {
            let (net, kinds) = local_network(skip);
            let asg: Vec<u32> = kinds
                .iter()
                .zip(spins)
                .map(|(&k, up)| spin_symbol(&alpha, k, if up { ColoredSpin::up(1) } else { ColoredSpin::down(1) }))
                .collect();
            !enumerate_terms(&net, &asg, 1).expect("valid local network").is_empty()
        };
        let tileable = try_net(None);
        let discontinuities = if tileable {
            Vec::new()
        } else {
            (0..4).filter(|&e| try_net(Some(e))).map(|e| WALL_NAMES[e].to_string()).collect()
        };
        patterns.push(VertexPattern { spins, ice, tileable, discontinuities });
    }
    SurjectivityReport { patterns }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tensor_core::evaluate_amplitude;

    #[test]
    fn alphabet_size() {
        assert_eq!(leg_alphabet(1).len(), 16);
        assert_eq!(leg_alphabet(2).len(), 49);
    }

    #[test]
    fn tile_count() {
        // 1 + s + s³ ... per sublattice: s + s² + s³ + s² + s
        assert_eq!(all_tiles(Kind::H, 2).len(), 2 + 4 + 8 + 4 + 2);
        assert_eq!(tile_tensor(Kind::V, 2).0.len(), 20);
    }

    #[test]
    fn l4_geometry() {
        let cn = build_network(4, 1).unwrap();
        let r = &cn.towers;
        assert_eq!(r[&Site::h(0, 0)], (1, 1));
        assert_eq!(r[&Site::h(0, 1)], (2, 2));
        assert_eq!(r[&Site::h(1, 1)], (1, 2));
        let mut caps: Vec<String> = cn.arrow_caps().iter().map(|(s, w)| format!("{:?}{}{}.k{}", s.kind, s.x, s.y, w + 1)).collect();
        caps.sort();
        assert_eq!(caps, ["H10.k3", "H12.k4", "H20.k2", "H22.k5", "V01.k3", "V02.k4", "V21.k2", "V22.k5"]);
    }

    #[test]
    fn l2_single_amplitude() {
        let cn = build_network(2, 1).unwrap();
        let b = crate::enumerate_ground_basis(2, 1).unwrap();
        assert_eq!(evaluate_amplitude(&cn.net, &cn.assignment(&b[0])).unwrap(), QMonomial::q_pow12(12));
    }

    #[test]
    fn six_patterns_tile() {
        let rep = local_surjectivity_report();
        assert_eq!(rep.tileable(), 6);
        assert!(rep.patterns.iter().all(|p| p.tileable == p.ice));
        let all_out = rep.patterns.iter().find(|p| p.spins == [false, true, true, false]).unwrap();
        assert!(!all_out.tileable);
    }
}

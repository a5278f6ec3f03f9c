//! Prism-tile network: towers of `R`/`L` tiles over every triangle.
//!
//! Leg order of every tile: `[k1 bottom, wall 0, wall 1, wall 2, k5 top]`;
//! wall `k` faces the neighbour across the class-`k` edge. Labels are
//! `(dashed, solid, dotted)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use tensor_core::{
    enumerate_terms, Component, Label, Leg, LegAlphabet, LegRef, LegRole, NetworkGraph, QMonomial, SparseTensor,
};

use crate::domain::{hexagon_covers, Tri, TriDomain, TriKind, Vertex};
use crate::tiling::{ground_tilings, height_field, LozengeTiling};
use crate::{check_colors_count, LozengeError};

/// Weights of the 2-, 3- and 4-arrow tiles in twelfths of a power of q.
pub const PRISM_WEIGHTS12: [i64; 3] = [0, 3, 6];

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sub {
    R,
    L,
}

impl Sub {
    pub fn of(t: &Tri) -> Sub {
        match t.kind {
            TriKind::D => Sub::R,
            TriKind::U => Sub::L,
        }
    }
}

/// One prism tile: sublattice, index 1..=9 (1–3 are the shared `Y` tiles) and colours.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PrismTileId {
    pub sub: Sub,
    pub index: u8,
    pub colors: Vec<u8>,
}

impl PrismTileId {
    /// Arrows crossing the tile's walls and ends: 2, 3 or 4.
    pub fn arrows(&self) -> u8 {
        match self.index {
            1..=3 => 2,
            4..=6 => 3,
            _ => 4,
        }
    }
}

impl std::fmt::Display for PrismTileId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = if self.index <= 3 { 'Y' } else if self.sub == Sub::R { 'R' } else { 'L' };
        let cs: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        write!(f, "{name}{}[{}]", self.index, cs.join(","))
    }
}

fn fam(s: u8) -> Vec<Component> {
    std::iter::once(Component::Zero)
        .chain((1..=s).flat_map(|c| [Component::plus(c), Component::minus(c), Component::Degenerate { color: c }]))
        .collect()
}

pub fn leg_alphabet(s: u8) -> Arc<LegAlphabet> {
    Arc::new(LegAlphabet::product(&[fam(s), fam(s), fam(s)]).expect("distinct labels"))
}

/// The five leg labels of a tile.
pub fn prism_legs(t: &PrismTileId) -> [Label; 5] {
    let z = Component::Zero;
    let c = |i: usize| t.colors.get(i).copied().unwrap_or(1);
    let (p, m, o) = (
        |i: usize| Component::plus(c(i)),
        |i: usize| Component::minus(c(i)),
        |i: usize| Component::Degenerate { color: c(i) },
    );
    let l = |a, b, x| Label(vec![a, b, x]);
    let zero = l(z, z, z);
    let ends = |lab: Label| [lab.clone(), zero.clone(), zero.clone(), zero.clone(), lab];
    match (t.sub, t.index) {
        (_, 1) => ends(l(p(0), p(1), z)),
        (_, 2) => ends(l(z, m(0), p(1))),
        (_, 3) => ends(l(m(0), z, m(1))),
        (Sub::R, 4) => [l(p(0), p(1), z), l(o(0), z, z), l(p(0), p(1), z), zero.clone(), zero],
        (Sub::R, 5) => [l(z, m(0), p(1)), l(z, p(0), p(1)), zero.clone(), l(z, o(0), z), zero],
        (Sub::R, 6) => [l(m(0), z, m(1)), zero.clone(), l(z, z, o(1)), l(p(0), z, p(1)), zero],
        (Sub::L, 4) => [l(p(0), p(1), z), zero.clone(), l(p(0), p(1), z), l(z, o(1), z), zero],
        (Sub::L, 5) => [l(z, m(0), p(1)), l(z, p(0), p(1)), l(z, z, o(1)), zero.clone(), zero],
        (Sub::L, 6) => [l(m(0), z, m(1)), l(o(0), z, z), zero.clone(), l(p(0), z, p(1)), zero],
        (Sub::R, 7) => [zero.clone(), l(p(0), m(1), p(2)), l(m(0), m(1), m(2)), l(z, o(1), z), zero],
        (Sub::R, 8) => [zero.clone(), l(m(0), p(1), m(2)), l(z, z, o(2)), l(m(0), p(1), m(2)), zero],
        (Sub::R, _) => [zero.clone(), l(o(0), z, z), l(p(0), p(1), p(2)), l(p(0), m(1), p(2)), zero],
        (Sub::L, 7) => [zero.clone(), l(o(0), z, z), l(m(0), m(1), m(2)), l(m(0), p(1), m(2)), zero],
        (Sub::L, 8) => [zero.clone(), l(m(0), p(1), m(2)), l(p(0), p(1), p(2)), l(z, o(1), z), zero],
        (Sub::L, _) => [zero.clone(), l(p(0), m(1), p(2)), l(z, z, o(2)), l(p(0), m(1), p(2)), zero],
    }
}

/// Every tile of one sublattice for `s` colours.
pub fn all_prism_tiles(sub: Sub, s: u8) -> Vec<PrismTileId> {
    let mut out = Vec::new();
    for index in 1..=9u8 {
        let arity = if index <= 6 { 2 } else { 3 };
        let mut combos: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..arity {
            combos = combos.into_iter().flat_map(|p| (1..=s).map(move |c| [p.clone(), vec![c]].concat())).collect();
        }
        out.extend(combos.into_iter().map(|colors| PrismTileId { sub, index, colors }));
    }
    out
}

/// The five-leg tile tensor of one sublattice, plus its entry → tile map.
pub fn prism_tensor(sub: Sub, s: u8, weights12: &[i64; 3]) -> (SparseTensor, HashMap<Vec<u32>, PrismTileId>) {
    let a = leg_alphabet(s);
    let legs = ["k1", "w0", "w1", "w2", "k5"].iter().map(|n| Leg::new(*n, a.clone())).collect();
    let mut t = SparseTensor::new(legs);
    let mut ids = HashMap::new();
    for tile in all_prism_tiles(sub, s) {
        let key: Vec<u32> = prism_legs(&tile).iter().map(|lab| a.symbol(lab).expect("label in alphabet")).collect();
        let w = weights12[tile.arrows() as usize - 2];
        t.insert(key.clone(), QMonomial::q_pow12(w)).expect("distinct entries");
        ids.insert(key, tile);
    }
    (t, ids)
}

/// Bottom-leg label of a face: its lozenge's orientation and line colours.
pub fn phys_label(diag: u8, colors: [u8; 3]) -> Label {
    let z = Component::Zero;
    let (p, m) = (|k: usize| Component::plus(colors[k]), |k: usize| Component::minus(colors[k]));
    match diag {
        1 => Label(vec![p(0), p(2), z]),
        0 => Label(vec![z, m(2), p(1)]),
        _ => Label(vec![m(0), z, m(1)]),
    }
}

fn decode_phys(lab: &Label) -> Option<(u8, [u8; 3])> {
    use Component::{Arrow, Zero};
    match lab.0.as_slice() {
        [Arrow { n: 1, color: a }, Arrow { n: 1, color: b }, Zero] => Some((1, [*a, 0, *b])),
        [Zero, Arrow { n: -1, color: a }, Arrow { n: 1, color: b }] => Some((0, [0, *b, *a])),
        [Arrow { n: -1, color: a }, Zero, Arrow { n: -1, color: b }] => Some((2, [*a, *b, 0])),
        _ => None,
    }
}

/// Top level `M` and the lowest level of every tower: a tower must reach
/// down to the largest spin height its face takes over the ground tilings.
pub fn tower_levels(d: &TriDomain) -> Result<(usize, Vec<usize>), LozengeError> {
    let ground = ground_tilings(d)?;
    if ground.is_empty() {
        return Err(LozengeError::Matching("no ground-state tiling".into()));
    }
    let mut mx = vec![0i64; d.len()];
    for diag in &ground {
        let hf = height_field(d, diag)?;
        for (i, m) in mx.iter_mut().enumerate() {
            *m = (*m).max(hf.spin_height(d, i));
        }
    }
    let top = *mx.iter().max().expect("nonempty");
    Ok((top as usize, mx.iter().map(|&m| (top - m) as usize).collect()))
}

/// The built network with its geometry.
#[derive(Clone, Debug)]
pub struct PrismNetwork {
    pub domain: TriDomain,
    pub s: u8,
    pub net: NetworkGraph,
    /// `(face, level) → node`.
    pub tiles: BTreeMap<(usize, usize), usize>,
    pub top: usize,
    pub lo: Vec<usize>,
    /// Weighted top-level wall caps `(face, wall) → exponent in twelfths`.
    pub ancillas: BTreeMap<(usize, u8), i64>,
    r_ids: HashMap<Vec<u32>, PrismTileId>,
    l_ids: HashMap<Vec<u32>, PrismTileId>,
}

pub fn build_network(d: &TriDomain, s: u8) -> Result<PrismNetwork, LozengeError> {
    build_network_with(d, s, &PRISM_WEIGHTS12, -1)
}

/// Network with custom tile weights and ancilla exponent per boundary vertex
/// of degree 4 (twelfths; 0 disables the ancillas).
pub fn build_network_with(
    d: &TriDomain,
    s: u8,
    weights12: &[i64; 3],
    ancilla12: i64,
) -> Result<PrismNetwork, LozengeError> {
    check_colors_count(s)?;
    let alpha = leg_alphabet(s);
    let (rt, r_ids) = prism_tensor(Sub::R, s, weights12);
    let (lt, l_ids) = prism_tensor(Sub::L, s, weights12);
    let (rt, lt) = (Arc::new(rt), Arc::new(lt));
    let cap = |w: i64| Arc::new(SparseTensor::delta(Leg::new("cap", alpha.clone()), 0, QMonomial::q_pow12(w)).unwrap());
    let zero = cap(0);
    let (top, lo) = tower_levels(d)?;
    let mut ancillas: BTreeMap<(usize, u8), i64> = BTreeMap::new();
    if ancilla12 != 0 {
        for (i, k) in d.boundary_edges() {
            for v in d.faces()[i].edge(k) {
                if d.degree(v) == 4 {
                    *ancillas.entry((i, k)).or_default() += ancilla12;
                }
            }
        }
    }
    let mut net = NetworkGraph::new();
    let mut tiles = BTreeMap::new();
    for (i, f) in d.faces().iter().enumerate() {
        for lev in lo[i]..=top {
            let t = if Sub::of(f) == Sub::R { rt.clone() } else { lt.clone() };
            tiles.insert((i, lev), net.add_node(t, format!("{f}@{lev}")));
        }
    }
    for (i, f) in d.faces().iter().enumerate() {
        for lev in lo[i]..=top {
            let id = tiles[&(i, lev)];
            if lev == lo[i] {
                net.open_leg(LegRef::new(id, 0), LegRole::Physical);
            }
            if lev == top {
                net.cap(LegRef::new(id, 4), zero.clone(), "top");
            } else {
                net.connect(LegRef::new(id, 4), LegRef::new(tiles[&(i, lev + 1)], 0));
            }
            for k in 0..3u8 {
                let nb = d.index_of(&f.across(k));
                match nb.and_then(|n| tiles.get(&(n, lev))) {
                    Some(&nid) => {
                        if f.kind == TriKind::U {
                            net.connect(LegRef::new(id, k as usize + 1), LegRef::new(nid, k as usize + 1));
                        }
                    }
                    None => {
                        let w = if lev == top { ancillas.get(&(i, k)).copied().unwrap_or(0) } else { 0 };
                        let c = if w == 0 { zero.clone() } else { cap(w) };
                        net.cap(LegRef::new(id, k as usize + 1), c, "wall");
                    }
                }
            }
        }
    }
    net.validate()?;
    Ok(PrismNetwork { domain: d.clone(), s, net, tiles, top, lo, ancillas, r_ids, l_ids })
}

impl PrismNetwork {
    /// Physical assignment (face order) for a tiling.
    pub fn assignment(&self, t: &LozengeTiling) -> Vec<u32> {
        let a = leg_alphabet(self.s);
        t.diag.iter().zip(&t.colors).map(|(&m, &c)| a.symbol(&phys_label(m, c)).expect("colour in range")).collect()
    }

    /// Amplitude as the sum over admissible tilings of the product of tile
    /// weights (same value as contracting with the physical legs fixed).
    pub fn amplitude(&self, t: &LozengeTiling) -> Result<QMonomial, LozengeError> {
        let mut total = QMonomial::zero();
        for term in enumerate_terms(&self.net, &self.assignment(t), 64)? {
            let mut w = QMonomial::one();
            for (nd, key) in self.net.nodes().iter().zip(&term) {
                w = w * *nd.tensor.get(key).expect("chosen entry exists");
            }
            total = total.try_add(&w)?;
        }
        Ok(total)
    }

    pub fn tile_of(&self, sub: Sub, key: &[u32]) -> Option<&PrismTileId> {
        match sub {
            Sub::R => self.r_ids.get(key),
            Sub::L => self.l_ids.get(key),
        }
    }
}

/// A prism tiling: the tile chosen at every `(face, level)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrismTiling {
    pub tiles: BTreeMap<(usize, usize), PrismTileId>,
}

/// The unique prism tiling over a ground-basis state.
pub fn tiling_from_config(pn: &PrismNetwork, t: &LozengeTiling) -> Result<PrismTiling, LozengeError> {
    let terms = enumerate_terms(&pn.net, &pn.assignment(t), 2)?;
    if terms.len() != 1 {
        return Err(LozengeError::TilingCount(terms.len()));
    }
    let chosen = &terms[0];
    let mut tiles = BTreeMap::new();
    for (&(i, lev), &id) in &pn.tiles {
        let sub = Sub::of(&pn.domain.faces()[i]);
        let tile = pn.tile_of(sub, &chosen[id]).ok_or(LozengeError::Discontinuity("unknown tile entry".into()))?;
        tiles.insert((i, lev), tile.clone());
    }
    let pt = PrismTiling { tiles };
    check_continuity(pn, &pt)?;
    Ok(pt)
}

/// Checks label matching across every edge and cap of the network.
pub fn check_continuity(pn: &PrismNetwork, pt: &PrismTiling) -> Result<(), LozengeError> {
    let alpha = leg_alphabet(pn.s);
    let mut value: HashMap<LegRef, u32> = HashMap::new();
    for (&(i, lev), &id) in &pn.tiles {
        let tile = pt.tiles.get(&(i, lev)).ok_or(LozengeError::Discontinuity(format!("no tile at face {i}@{lev}")))?;
        if tile.sub != Sub::of(&pn.domain.faces()[i]) {
            return Err(LozengeError::Discontinuity(format!("wrong sublattice at face {i}@{lev}")));
        }
        for (k, lab) in prism_legs(tile).iter().enumerate() {
            let sym = alpha.symbol(lab).ok_or(LozengeError::Discontinuity(format!("colour out of range at {i}@{lev}")))?;
            value.insert(LegRef::new(id, k), sym);
        }
    }
    for (a, b) in pn.net.edges() {
        let get = |r: &LegRef| -> Option<u32> {
            value.get(r).copied().or_else(|| {
                let nd = &pn.net.nodes()[r.node];
                (nd.tensor.rank() == 1).then(|| nd.tensor.entries().next().map(|(k, _)| k[0])).flatten()
            })
        };
        if get(a) != get(b) {
            let name = |r: &LegRef| pn.net.nodes()[r.node].tag.clone();
            return Err(LozengeError::Discontinuity(format!("{}.{} ≠ {}.{}", name(a), a.leg, name(b), b.leg)));
        }
    }
    Ok(())
}

/// `(#2-arrow, #3-arrow, #4-arrow)` tiles in every tower.
pub fn tower_counts(pn: &PrismNetwork, pt: &PrismTiling) -> Vec<(usize, usize, usize)> {
    let mut out = vec![(0, 0, 0); pn.domain.len()];
    for (&(i, _), tile) in &pt.tiles {
        match tile.arrows() {
            2 => out[i].0 += 1,
            3 => out[i].1 += 1,
            _ => out[i].2 += 1,
        }
    }
    out
}

/// Reads the tiling off the bottom legs, after checking continuity and that
/// every tower turns exactly once, at the level set by its spin height.
pub fn config_from_tiling(pn: &PrismNetwork, pt: &PrismTiling) -> Result<LozengeTiling, LozengeError> {
    check_continuity(pn, pt)?;
    let d = &pn.domain;
    let mut diag = Vec::with_capacity(d.len());
    let mut colors = Vec::with_capacity(d.len());
    for i in 0..d.len() {
        let bottom = &pt.tiles[&(i, pn.lo[i])];
        let (m, c) = decode_phys(&prism_legs(bottom)[0])
            .ok_or_else(|| LozengeError::Discontinuity(format!("no lozenge enters face {i}")))?;
        diag.push(m);
        colors.push(c);
    }
    let t = LozengeTiling { diag, colors };
    t.validate(d, pn.s)?;
    let hf = height_field(d, &t.diag)?;
    for (i, &(n2, n3, n4)) in tower_counts(pn, pt).iter().enumerate() {
        let phi = hf.spin_height(d, i);
        let levels = pn.top - pn.lo[i] + 1;
        let turn = pn.top as i64 - phi;
        let ok = n3 == 1
            && n4 as i64 == phi
            && n2 as i64 == levels as i64 - phi - 1
            && pt.tiles.get(&(i, turn.max(0) as usize)).is_some_and(|x| x.arrows() == 3);
        if !ok {
            return Err(LozengeError::Discontinuity(format!("tower over face {i} has counts ({n2},{n3},{n4})")));
        }
    }
    Ok(t)
}

/// The 4-arrow tiles of each level, as the unique hexagon cover of their faces.
pub fn four_arrow_hexagons(pn: &PrismNetwork, pt: &PrismTiling) -> Result<Vec<(usize, Vec<Vertex>)>, LozengeError> {
    let mut by_level: BTreeMap<usize, BTreeSet<Tri>> = BTreeMap::new();
    for (&(i, lev), tile) in &pt.tiles {
        if tile.arrows() == 4 {
            by_level.entry(lev).or_default().insert(pn.domain.faces()[i]);
        }
    }
    let mut out = Vec::new();
    for (lev, faces) in by_level {
        let covers = hexagon_covers(faces, 2);
        if covers.len() != 1 {
            return Err(LozengeError::Discontinuity(format!("4-arrow tiles at level {lev} admit {} hexagon covers", covers.len())));
        }
        out.push((lev, covers.into_iter().next().expect("one cover")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::ground_tilings;
    use tensor_core::evaluate_amplitude;

    #[test]
    fn alphabet_size() {
        assert_eq!(leg_alphabet(1).len(), 64);
        assert_eq!(leg_alphabet(2).len(), 343);
    }

    #[test]
    fn tile_count() {
        // 6·s² + 3·s³ per sublattice
        assert_eq!(all_prism_tiles(Sub::R, 2).len(), 6 * 4 + 3 * 8);
        assert_eq!(prism_tensor(Sub::L, 2, &PRISM_WEIGHTS12).0.len(), 48);
    }

    #[test]
    fn phys_labels_decode() {
        for m in 0..3u8 {
            let mut c = [2u8, 1, 3];
            c[m as usize] = 0;
            assert_eq!(decode_phys(&phys_label(m, c)), Some((m, c)));
        }
    }

    #[test]
    fn hex3_geometry() {
        let d = TriDomain::named("hex3").unwrap();
        let (top, lo) = tower_levels(&d).unwrap();
        assert_eq!(top, 1);
        assert_eq!(lo.iter().filter(|&&l| l == 0).count(), 6);
        let pn = build_network(&d, 1).unwrap();
        assert_eq!(pn.tiles.len(), 24);
        // three degree-4 boundary vertices, two walls each
        assert_eq!(pn.ancillas.values().sum::<i64>(), -6);
    }

    #[test]
    fn hex1_single_amplitude() {
        let d = TriDomain::named("hex1").unwrap();
        let pn = build_network(&d, 1).unwrap();
        let g = ground_tilings(&d).unwrap();
        let t = LozengeTiling::uncolored(g[0].clone());
        assert_eq!(evaluate_amplitude(&pn.net, &pn.assignment(&t)).unwrap(), QMonomial::q_pow12(18));
    }
}
